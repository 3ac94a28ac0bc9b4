#include "hypercover/set_function.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hypercover {

struct SetFunction::Node {
  enum class Kind { tabulated, callable, minus_coverage, contracted, restricted, max_of };
  Kind kind;
  int n = 0;
  Mask active = 0;
  std::vector<Val> table;         // tabulated
  Eval eval;                      // callable
  std::shared_ptr<const Node> a;  // child / left child
  std::shared_ptr<const Node> b;  // right child (max_of)
  WeightedHypergraph h;           // minus_coverage
  Mask z = 0;                     // contracted / restricted

  Val value(Mask x) const {
    switch (kind) {
      case Kind::tabulated:
        return table[x];
      case Kind::callable:
        return eval(x);
      case Kind::minus_coverage:
        return val_add(a->value(x), -h.coverage(x));
      case Kind::contracted: {
        Val best = kNegInf;
        for (Mask r = 0;; r = next_submask(r, z)) {
          best = std::max(best, a->value(x | r));
          if (r == z) break;
        }
        return best;
      }
      case Kind::restricted:
        return a->value(x);
      case Kind::max_of:
        return std::max(a->value(x), b->value(x));
    }
    throw std::logic_error("unreachable");
  }
};

SetFunction SetFunction::tabulated(int n, std::vector<Val> table) {
  if (n < 0 || n > kHardCap) throw std::invalid_argument("ground set size out of range");
  if (table.size() != (std::size_t{1} << n))
    throw std::invalid_argument("table size must be 2^n");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::tabulated;
  node->n = n;
  node->active = full_mask(n);
  node->table = std::move(table);
  return SetFunction(std::move(node));
}

SetFunction SetFunction::from_callable(int n, Mask active, Eval eval) {
  if (n < 0 || n > kHardCap) throw std::invalid_argument("ground set size out of range");
  if ((active & ~full_mask(n)) != 0) throw std::invalid_argument("active set outside ground set");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::callable;
  node->n = n;
  node->active = active;
  node->eval = std::move(eval);
  return SetFunction(std::move(node));
}

SetFunction SetFunction::minus_coverage(WeightedHypergraph h) const {
  if (h.n() != n()) throw std::invalid_argument("hypergraph ground set mismatch");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::minus_coverage;
  node->n = n();
  node->active = active();
  node->a = node_;
  node->h = std::move(h);
  return SetFunction(std::move(node));
}

SetFunction SetFunction::contracted(Mask z) const {
  if ((z & ~active()) != 0) throw std::invalid_argument("contraction set outside active domain");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::contracted;
  node->n = n();
  node->active = active() & ~z;
  node->a = node_;
  node->z = z;
  return SetFunction(std::move(node));
}

SetFunction SetFunction::restricted(Mask z) const {
  if ((z & ~active()) != 0) throw std::invalid_argument("restriction set outside active domain");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::restricted;
  node->n = n();
  node->active = active() & ~z;
  node->a = node_;
  node->z = z;
  return SetFunction(std::move(node));
}

SetFunction SetFunction::max_of(SetFunction a, SetFunction b) {
  if (a.n() != b.n() || a.active() != b.active())
    throw std::invalid_argument("max_of needs matching domains");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::max_of;
  node->n = a.n();
  node->active = a.active();
  node->a = a.node_;
  node->b = b.node_;
  return SetFunction(std::move(node));
}

int SetFunction::n() const { return node_->n; }
Mask SetFunction::active() const { return node_->active; }

Val SetFunction::value(Mask x) const {
  if ((x & ~active()) != 0) throw std::invalid_argument("subset outside active domain");
  return node_->value(x);
}

Val SetFunction::max_value() const {
  Val best = kNegInf;
  const Mask dom = active();
  for (Mask x = 0;; x = next_submask(x, dom)) {
    best = std::max(best, node_->value(x));
    if (x == dom) break;
  }
  return best;
}

std::vector<Val> SetFunction::tabulate() const {
  std::vector<Val> t(std::size_t{1} << n(), kNegInf);
  const Mask dom = active();
  for (Mask x = 0;; x = next_submask(x, dom)) {
    t[x] = node_->value(x);
    if (x == dom) break;
  }
  return t;
}

bool SetFunction::is_symmetric() const {
  const Mask dom = active();
  for (Mask x = 0;; x = next_submask(x, dom)) {
    if (node_->value(x) != node_->value(dom & ~x)) return false;
    if (x == dom) break;
  }
  return true;
}

bool SetFunction::is_skew_supermodular() const {
  const std::vector<Val> t = tabulate();
  const Mask dom = active();
  for (Mask x = 0;; x = next_submask(x, dom)) {
    for (Mask y = 0;; y = next_submask(y, dom)) {
      const Val lhs = t[x] + t[y];
      if (lhs > t[x & y] + t[x | y] && lhs > t[x & ~y] + t[y & ~x]) return false;
      if (y == dom) break;
    }
    if (x == dom) break;
  }
  return true;
}

SetFunction symmetrized(const SetFunction& f) {
  const Mask dom = f.active();
  return SetFunction::from_callable(
      f.n(), dom, [f, dom](Mask x) { return std::max(f.value(x), f.value(dom & ~x)); });
}

}  // namespace hypercover
