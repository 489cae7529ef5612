#include "netgen.hpp"

#include <optional>

namespace inet::testing {

const char* const kArithRules = R"(agent Z:0, S:1, Add:2, Mul:2, Dup:2, Era:0

rule Add(x1, x2) >< Z => x1 = x2;
rule Add(x1, x2) >< S(y) => Add(x1, w) = y, x2 = S(w);
rule Mul(y, r) >< Z => Era = y, r = Z;
rule Mul(y, r) >< S(x) => Dup(y1, y2) = y, Mul(y1, w) = x, Add(y2, r) = w;
rule Dup(a, b) >< Z => a = Z, b = Z;
rule Dup(a, b) >< S(x) => Dup(a1, b1) = x, a = S(a1), b = S(b1);
rule Era >< Z => ;
rule Era >< S(x) => Era = x;
)";

std::uint64_t add_cost(std::uint64_t principal) { return principal + 1; }
std::uint64_t dup_cost(std::uint64_t n) { return n + 1; }
std::uint64_t era_cost(std::uint64_t n) { return n + 1; }

// Mul(y, r) = m with y = k: one step per S of m, each copying k and adding
// k to the running product (m - 1) * k.
std::uint64_t mul_cost(std::uint64_t m, std::uint64_t k) {
  if (m == 0) return 1 + era_cost(k);
  return 1 + dup_cost(k) + mul_cost(m - 1, k) + add_cost((m - 1) * k);
}

namespace {

std::string numeral(std::uint64_t n, const std::string& tail = "Z") {
  std::string out;
  for (std::uint64_t i = 0; i < n; ++i) out += "S(";
  out += tail;
  out.append(n, ')');
  return out;
}

// A value available for consumption: its source text, its numeric part and
// the free input name it ends in (open values are S^n(in)).
struct Value {
  std::string text;
  std::uint64_t n = 0;
  std::optional<std::string> open;
};

class Builder {
 public:
  Builder(std::mt19937_64& rng, const NetShape& shape) : rng_(rng), shape_(shape) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin() { return pick(2) == 0; }
  std::string fresh() { return "x" + std::to_string(++names_); }

  void equation(const std::string& a, const std::string& b) {
    eqs_.push_back(coin() ? a + " = " + b : b + " = " + a);
  }

  Value literal() {
    const auto n = static_cast<std::uint64_t>(pick(shape_.max_value / 2 + 1));
    return {numeral(n), n, std::nullopt};
  }

  // Either the value's term is used in place or it is routed through a name.
  Value route(Value v) {
    switch (pick(4)) {
      case 0: {
        const std::string x = fresh();
        equation(x, v.text);
        return {x, v.n, v.open};
      }
      case 1: {
        // Two hops: x = t, y = x.
        const std::string x = fresh();
        const std::string y = fresh();
        equation(x, v.text);
        equation(y, x);
        return {y, v.n, v.open};
      }
      default: return v;
    }
  }

  Value take_closed() {
    for (std::size_t i = pool_.size(); i-- > 0;) {
      if (!pool_[i].open) {
        Value v = pool_[i];
        pool_.erase(pool_.begin() + static_cast<long>(i));
        return v;
      }
    }
    return literal();
  }

  Value take_any() {
    if (pool_.empty() || pick(3) == 0) return literal();
    const int i = pick(static_cast<int>(pool_.size()));
    Value v = pool_[static_cast<std::size_t>(i)];
    pool_.erase(pool_.begin() + i);
    return v;
  }

  void step() {
    switch (pick(6)) {
      case 0:
      case 1: {  // Add(b, r) = a
        Value a = route(take_closed());
        Value b = route(take_any());
        if (a.n + b.n > static_cast<std::uint64_t>(shape_.max_value)) {
          pool_.push_back(a);
          pool_.push_back(b);
          return;
        }
        const std::string r = fresh();
        equation("Add(" + b.text + ", " + r + ")", a.text);
        cost_ += add_cost(a.n);
        pool_.push_back({r, a.n + b.n, b.open});
        return;
      }
      case 2: {  // Mul(y, r) = m
        Value m = route(take_closed());
        Value y = route(take_closed());
        if (m.n * y.n > static_cast<std::uint64_t>(shape_.max_value)) {
          pool_.push_back(m);
          pool_.push_back(y);
          return;
        }
        const std::string r = fresh();
        equation("Mul(" + y.text + ", " + r + ")", m.text);
        cost_ += mul_cost(m.n, y.n);
        pool_.push_back({r, m.n * y.n, std::nullopt});
        return;
      }
      case 3: {  // Dup(a, b) = v
        Value v = route(take_closed());
        const std::string a = fresh();
        const std::string b = fresh();
        equation("Dup(" + a + ", " + b + ")", v.text);
        cost_ += dup_cost(v.n);
        pool_.push_back({a, v.n, std::nullopt});
        pool_.push_back({b, v.n, std::nullopt});
        return;
      }
      case 4: {  // Era = v
        if (pool_.size() < 2) return;
        Value v = route(take_closed());
        equation("Era", v.text);
        cost_ += era_cost(v.n);
        return;
      }
      default: {  // S(v)
        Value v = take_any();
        if (v.n + 1 > static_cast<std::uint64_t>(shape_.max_value)) {
          pool_.push_back(v);
          return;
        }
        pool_.push_back({"S(" + v.text + ")", v.n + 1, v.open});
        return;
      }
    }
  }

  GeneratedNet finish() {
    for (int i = 0; i < shape_.inputs; ++i) {
      const std::string in = "in" + std::to_string(i + 1);
      inputs_.push_back(in);
      pool_.push_back({in, 0, in});
    }
    for (int i = 0; i < shape_.ops; ++i) step();
    if (pool_.empty()) pool_.push_back(literal());

    GeneratedNet g;
    std::vector<std::string> head;
    for (const auto& in : inputs_) {
      head.push_back(in);
      g.expected.push_back(in);
    }
    for (auto& v : pool_) {
      v = route(v);
      head.push_back(v.text);
      g.expected.push_back(numeral(v.n, v.open ? *v.open : "Z"));
    }
    std::string net = "net <";
    for (std::size_t i = 0; i < head.size(); ++i) net += (i ? ", " : "") + head[i];
    net += ">:";
    for (std::size_t i = 0; i < eqs_.size(); ++i) net += (i ? ", " : " ") + eqs_[i];
    net += ";\n";
    g.source = std::string(kArithRules) + "\n" + net;
    g.interactions = cost_;
    return g;
  }

 private:
  std::mt19937_64& rng_;
  NetShape shape_;
  int names_ = 0;
  std::vector<Value> pool_;
  std::vector<std::string> eqs_;
  std::vector<std::string> inputs_;
  std::uint64_t cost_ = 0;
};

}  // namespace

GeneratedNet random_arith_net(std::mt19937_64& rng, const NetShape& shape) {
  return Builder(rng, shape).finish();
}

}  // namespace inet::testing
