#pragma once

// Heap / equation-stack machine executing LL0. Nodes are fixed-width
// records in an arena addressed by index; id 0 marks name nodes (first port
// empty) and indirections (first port set).

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <string>
#include <vector>

#include "inet/calculus.hpp"
#include "inet/ll0.hpp"

namespace inet {

using Handle = std::uint32_t;
inline constexpr Handle kNull = 0xFFFFFFFFu;
inline constexpr std::uint32_t kIdName = 0;

// 1 << 24 nodes unless INET_HEAP_CAP says otherwise.
std::size_t default_heap_cap();

struct VmOptions {
  std::size_t heap_cap = default_heap_cap();
  std::uint64_t max_steps = kDefaultStepLimit;
};

struct VmCounters {
  std::uint64_t interactions = 0;
  std::uint64_t name_ops = 0;
  std::uint64_t allocs = 0;
  std::uint64_t frees = 0;
  std::uint64_t max_stack = 0;
  std::uint64_t steps = 0;

  bool operator==(const VmCounters&) const = default;
};

// interactions=<I> name_ops=<N> allocs=<A> frees=<F> max_stack=<D>
std::string format_vm_counters(const VmCounters& c);

// "step <n> <rule> | <left>=<right>" for the popped equation.
using VmTraceSink = std::function<void(std::uint64_t, const std::string&)>;

class Vm {
 public:
  // Loads the program: resolves symbols and procedures, then runs the
  // build instructions. Throws HeapExhausted, UndeclaredSymbol,
  // InvalidProgram.
  explicit Vm(const LL0Program& program, VmOptions options = {});

  // Runs to an empty stack. Throws MissingRule, HeapExhausted,
  // StepLimitExceeded, DoubleFree.
  void eval(const VmTraceSink& trace = {});

  // Interface terms, indirection-free. Names created by the build phase
  // print as their variable; the rest get v#1, v#2, ... in visit order.
  // Throws CyclicIndirection.
  std::vector<Term> readback() const;

  const Signature& signature() const { return sig_; }
  const VmCounters& counters() const { return counters_; }
  std::size_t stack_depth() const { return stack_.size(); }
  std::size_t interface_size() const { return iface_.size(); }
  std::size_t live_nodes() const;
  std::size_t live_agent_nodes() const;
  std::size_t live_name_nodes() const;
  // Distinct nodes reachable from the interface.
  std::size_t reachable_nodes() const;
  int max_port() const { return width_; }

  // Raw access for tests.
  Handle interface_slot(int slot) const { return iface_.at(slot - 1); }
  std::uint32_t id(Handle h) const { return ids_[h]; }
  Handle port(Handle h, int slot) const { return ports_[index(h, slot)]; }

  struct Op;
  struct Proc {
    std::vector<Op> ops;
    int regs = 0;
    bool reclaim = false;  // no stackFree: the popped cell stays claimed
  };

 private:
  std::size_t index(Handle h, int slot) const {
    return static_cast<std::size_t>(h) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(slot);
  }
  Handle alloc(std::uint32_t id);
  void release(Handle h);
  void push(Handle a, Handle b);
  void run(const Proc& proc, Handle l, Handle r, std::vector<Handle>& regs);
  Proc resolve(const std::vector<Instruction>& code, bool in_rule) const;
  std::string render(Handle h, int depth) const;

  Signature sig_;
  int width_ = 1;
  std::size_t cap_;
  std::uint64_t max_steps_;
  std::vector<std::uint32_t> ids_;
  std::vector<Handle> ports_;
  std::vector<std::uint8_t> live_;
  std::vector<Handle> free_list_;
  std::vector<std::pair<Handle, Handle>> stack_;
  std::vector<Handle> iface_;
  std::vector<Proc> procs_;
  std::vector<std::int32_t> table_;  // (id1, id2) -> procedure index
  std::unordered_map<Handle, std::string> build_names_;
  VmCounters counters_;
};

struct Vm::Op {
  enum class Code : std::uint8_t {
    mk_agent,
    mk_name,
    free_node,
    set_port,
    set_id,
    push,
    move,
    mk_interface,
    set_interface,
  };
  // Operand sources.
  enum class Src : std::uint8_t { reg, left, right, stack_left, stack_right };
  struct Ref {
    Src src = Src::reg;
    std::int32_t reg = 0;
    std::int32_t port = 0;  // 0: the node; p: ports[p - 1]
  };
  Code code;
  Ref a;          // target / first operand
  Ref b;          // value / second operand
  std::uint32_t n = 0;  // symbol id, port, slot or size
  std::string name;     // mkName variable (build phase)
};

}  // namespace inet
