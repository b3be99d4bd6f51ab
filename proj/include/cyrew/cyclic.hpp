#ifndef CYREW_CYCLIC_HPP
#define CYREW_CYCLIC_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cyrew/rewrite.hpp"
#include "cyrew/system.hpp"
#include "cyrew/word.hpp"

namespace cyrew {

enum class StepKind { base, added };

/// One cyclic reduction: rotate the source, then apply a single rule (base
/// kind), or replace a whole rotation by the target of a cyclic rule (added
/// kind). Chaining is the exploration graph's job.
struct CyclicStep {
  Word source;
  std::size_t rotation;      // rotate(source, rotation) == reduction.start
  ReductionTrace reduction;  // exactly one step for base kind
  Word target;
  StepKind kind = StepKind::base;
  std::optional<std::size_t> cyclic_rule;  // index for added kind
};

/// Every single-application cyclic reduction available from w: one step per
/// (rotation, rule, position) triple, plus one per cyclic rule matching a
/// rotation of w.
inline std::vector<CyclicStep> cyclic_steps(const RewritingSystem& rs, const Word& w) {
  std::vector<CyclicStep> out;
  const std::size_t rotations = w.empty() ? 1 : w.size();
  for (std::size_t i = 0; i < rotations; ++i) {
    const Word rotated = rotate(w, i);
    for (std::size_t r = 0; r < rs.rules().size(); ++r) {
      for (std::size_t p : occurrences(rotated, rs.rules()[r].lhs)) {
        CyclicStep step;
        step.source = w;
        step.rotation = i;
        step.target = apply_rule_at(rs, rotated, r, p);
        step.reduction = {rotated, step.target, {{r, p}}};
        step.kind = StepKind::base;
        out.push_back(std::move(step));
      }
    }
    for (std::size_t c = 0; c < rs.cyclic_rules().size(); ++c) {
      const CyclicRule& cr = rs.cyclic_rules()[c];
      if (rotated == cr.lhs) {
        CyclicStep step;
        step.source = w;
        step.rotation = i;
        step.target = cr.rhs;
        step.reduction = {cr.lhs, cr.rhs, {}};
        step.kind = StepKind::added;
        step.cyclic_rule = c;
        out.push_back(std::move(step));
      }
    }
  }
  return out;
}

/// True iff no base rule applies to any rotation of w.
inline bool is_cyclically_irreducible(const RewritingSystem& rs, const Word& w) {
  for (const Rule& r : rs.rules()) {
    if (occurs_cyclically(w, r.lhs)) {
      return false;
    }
  }
  return true;
}

/// True iff some cyclic rule's lhs is a rotation of w.
inline bool cyclic_rule_applies(const RewritingSystem& rs, const Word& w) {
  for (const CyclicRule& cr : rs.cyclic_rules()) {
    if (cr.lhs.size() == w.size() && are_cyclic_conjugates(cr.lhs, w)) {
      return true;
    }
  }
  return false;
}

enum class Tristate { yes, no, unknown };

inline const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    default: return "unknown";
  }
}

struct ExploreBudget {
  std::size_t max_nodes = 50'000;
  std::size_t max_edges = 500'000;
  std::size_t step_budget = kDefaultStepBudget;
};

/// A closed chain of cyclic reductions: the last target is conjugate to the
/// first source via closing_rotation. Witnesses a non-terminating sequence.
struct CycleWitness {
  std::vector<CyclicStep> steps;
  std::size_t closing_rotation = 0;
};

/// Exploration of every sequence of cyclic reductions from (all rotations of)
/// a word. Nodes are canonical rotations; edges record concrete steps from
/// the node's representative word.
struct ExplorationReport {
  Word query;                 // the word asked about
  Word root;                  // canonical_rotation(query)
  std::vector<Word> order;    // nodes in discovery order
  std::unordered_map<Word, std::vector<CyclicStep>, WordHash> edges;
  std::vector<Word> irreducible_forms;  // canonical, shortlex-sorted
  std::optional<CycleWitness> witness;
  bool budget_hit = false;
  Tristate terminates = Tristate::unknown;
  Tristate converges = Tristate::unknown;
};

namespace detail {

/// Lifts a path of graph edges (given from each node's representative) to a
/// concrete chain starting at `start`; rotation amounts are composed so each
/// produced step applies to the actual current word.
inline std::vector<CyclicStep> realize_path(const std::vector<const CyclicStep*>& path,
                                            Word start) {
  std::vector<CyclicStep> out;
  Word cur = std::move(start);
  for (const CyclicStep* edge : path) {
    const std::size_t len = cur.empty() ? 1 : cur.size();
    const auto align = rotation_taking(cur, edge->source);
    if (!align) {
      throw std::logic_error("realize_path: node representative is not a rotation");
    }
    CyclicStep step = *edge;
    step.source = cur;
    step.rotation = (*align + edge->rotation) % len;
    out.push_back(step);
    cur = step.target;
  }
  return out;
}

struct SccResult {
  std::vector<std::size_t> component;  // node index -> component id
  std::size_t count = 0;
};

/// Iterative Tarjan over the discovered graph; node order and adjacency order
/// are both deterministic, so component ids are too.
inline SccResult strongly_connected_components(
    const std::vector<Word>& order,
    const std::unordered_map<Word, std::vector<CyclicStep>, WordHash>& edges,
    const std::unordered_map<Word, std::size_t, WordHash>& index_of) {
  const std::size_t n = order.size();
  SccResult res;
  res.component.assign(n, static_cast<std::size_t>(-1));
  std::vector<std::size_t> low(n, 0), num(n, 0);
  std::vector<bool> on_stack(n, false), visited(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };

  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) {
      continue;
    }
    std::vector<Frame> frames{{start, 0}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      const std::size_t v = f.node;
      if (f.next_edge == 0) {
        visited[v] = true;
        num[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      const auto it = edges.find(order[v]);
      const auto& adj = it == edges.end() ? std::vector<CyclicStep>{} : it->second;
      bool descended = false;
      while (f.next_edge < adj.size()) {
        const auto target_it = index_of.find(canonical_rotation(adj[f.next_edge].target));
        ++f.next_edge;
        if (target_it == index_of.end()) {
          continue;  // target beyond the discovered frontier
        }
        const std::size_t w = target_it->second;
        if (!visited[w]) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      }
      if (descended) {
        continue;
      }
      if (low[v] == num[v]) {
        while (true) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          res.component[w] = res.count;
          if (w == v) {
            break;
          }
        }
        ++res.count;
      }
      frames.pop_back();
      if (!frames.empty()) {
        low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      }
    }
  }
  return res;
}

}  // namespace detail

/// Breadth-first exploration of the cyclic-reduction graph reachable from w.
/// Seeding with any rotation of w yields the same report, since nodes are
/// rotation classes. A reachable cycle through at least one base step proves
/// non-termination; exhaustive exploration without one proves termination.
inline ExplorationReport explore_cyclic(const RewritingSystem& rs, const Word& w,
                                        const ExploreBudget& budget = {}) {
  ExplorationReport report;
  report.query = w;
  report.root = canonical_rotation(w);

  std::unordered_map<Word, std::size_t, WordHash> index_of;
  std::deque<std::size_t> queue;
  std::size_t edge_count = 0;
  bool truncated = false;

  auto discover = [&](const Word& canon) -> std::size_t {
    auto it = index_of.find(canon);
    if (it != index_of.end()) {
      return it->second;
    }
    const std::size_t id = report.order.size();
    index_of.emplace(canon, id);
    report.order.push_back(canon);
    queue.push_back(id);
    return id;
  };

  discover(report.root);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    auto steps = cyclic_steps(rs, report.order[v]);
    edge_count += steps.size();
    for (const CyclicStep& step : steps) {
      const Word canon = canonical_rotation(step.target);
      if (index_of.count(canon) == 0) {
        if (report.order.size() >= budget.max_nodes) {
          truncated = true;
          continue;
        }
        discover(canon);
      }
    }
    report.edges.emplace(report.order[v], std::move(steps));
    if (edge_count > budget.max_edges) {
      truncated = true;
      break;
    }
  }
  if (!queue.empty()) {
    truncated = true;
  }
  report.budget_hit = truncated;

  // Nodes with an adjacency list and no outgoing step are the cyclically
  // irreducible forms (with respect to base and cyclic rules together).
  for (const Word& node : report.order) {
    auto it = report.edges.find(node);
    if (it != report.edges.end() && it->second.empty()) {
      report.irreducible_forms.push_back(node);
    }
  }
  std::sort(report.irreducible_forms.begin(), report.irreducible_forms.end(),
            shortlex_less);

  // Cycle detection over what was discovered; any cycle found is a proof of
  // non-termination even if the exploration was truncated.
  const auto scc = detail::strongly_connected_components(report.order, report.edges,
                                                         index_of);
  std::vector<bool> component_cyclic(scc.count, false);
  std::vector<bool> component_has_base(scc.count, false);
  for (std::size_t v = 0; v < report.order.size(); ++v) {
    auto it = report.edges.find(report.order[v]);
    if (it == report.edges.end()) {
      continue;
    }
    for (const CyclicStep& step : it->second) {
      auto t = index_of.find(canonical_rotation(step.target));
      if (t == index_of.end()) {
        continue;
      }
      if (scc.component[v] == scc.component[t->second]) {
        component_cyclic[scc.component[v]] = true;
        if (step.kind == StepKind::base) {
          component_has_base[scc.component[v]] = true;
        }
      }
    }
  }

  std::optional<std::size_t> cycle_node;
  bool added_only_cycle = false;
  for (std::size_t v = 0; v < report.order.size(); ++v) {
    const std::size_t c = scc.component[v];
    if (component_cyclic[c] && component_has_base[c]) {
      cycle_node = v;
      break;  // discovery order; the root is node 0
    }
    if (component_cyclic[c]) {
      added_only_cycle = true;
    }
  }

  if (cycle_node) {
    // Shortest edge cycle through the chosen node, inner BFS restricted to
    // its component, preferring earlier-listed edges.
    const std::size_t start = *cycle_node;
    const std::size_t comp = scc.component[start];
    std::unordered_map<std::size_t, std::pair<std::size_t, const CyclicStep*>> back;
    std::deque<std::size_t> bfs{start};
    std::vector<const CyclicStep*> cycle;
    std::vector<bool> seen(report.order.size(), false);
    seen[start] = true;
    while (!bfs.empty() && cycle.empty()) {
      const std::size_t v = bfs.front();
      bfs.pop_front();
      auto it = report.edges.find(report.order[v]);
      if (it == report.edges.end()) {
        continue;
      }
      for (const CyclicStep& step : it->second) {
        auto t = index_of.find(canonical_rotation(step.target));
        if (t == index_of.end() || scc.component[t->second] != comp) {
          continue;
        }
        if (t->second == start) {
          cycle.push_back(&step);
          for (std::size_t cur = v; cur != start;) {
            const auto& link = back.at(cur);
            cycle.push_back(link.second);
            cur = link.first;
          }
          std::reverse(cycle.begin(), cycle.end());
          break;
        }
        if (!seen[t->second]) {
          seen[t->second] = true;
          back.emplace(t->second, std::make_pair(v, &step));
          bfs.push_back(t->second);
        }
      }
    }
    if (!cycle.empty()) {
      const Word start_word = (start == 0) ? w : report.order[start];
      CycleWitness witness;
      witness.steps = detail::realize_path(cycle, start_word);
      const Word& last = witness.steps.back().target;
      witness.closing_rotation = rotation_taking(last, start_word).value_or(0);
      report.witness = std::move(witness);
    }
  }

  if (report.witness) {
    report.terminates = Tristate::no;
  } else if (!report.budget_hit && !added_only_cycle) {
    report.terminates = Tristate::yes;
  } else {
    report.terminates = Tristate::unknown;
  }

  if (report.irreducible_forms.size() >= 2) {
    report.converges = Tristate::no;
  } else if (!report.budget_hit) {
    report.converges = report.irreducible_forms.size() == 1 ? Tristate::yes
                                                             : Tristate::no;
  } else {
    report.converges = Tristate::unknown;
  }
  return report;
}

/// A concrete chain of steps from some start word, plus the rotation taking
/// its final word onto the canonical representative of the class reached.
struct RealizedPath {
  std::vector<CyclicStep> steps;
  std::size_t closing_rotation = 0;
  Word end;  // equals the canonical class word
};

/// Shortest discovery path from the report's root class to `target_class`,
/// lifted to concrete steps starting at `start` (any rotation of the query).
inline std::optional<RealizedPath> path_to_class(const ExplorationReport& report,
                                                 const Word& target_class,
                                                 const Word& start) {
  std::unordered_map<Word, std::size_t, WordHash> index_of;
  for (std::size_t i = 0; i < report.order.size(); ++i) {
    index_of.emplace(report.order[i], i);
  }
  const auto goal_it = index_of.find(target_class);
  if (goal_it == index_of.end()) {
    return std::nullopt;
  }
  const std::size_t goal = goal_it->second;
  std::vector<std::optional<std::pair<std::size_t, const CyclicStep*>>> back(
      report.order.size());
  std::deque<std::size_t> bfs{0};
  std::vector<bool> seen(report.order.size(), false);
  seen[0] = true;
  while (!bfs.empty()) {
    const std::size_t v = bfs.front();
    bfs.pop_front();
    if (v == goal) {
      break;
    }
    auto it = report.edges.find(report.order[v]);
    if (it == report.edges.end()) {
      continue;
    }
    for (const CyclicStep& step : it->second) {
      auto t = index_of.find(canonical_rotation(step.target));
      if (t == index_of.end() || seen[t->second]) {
        continue;
      }
      seen[t->second] = true;
      back[t->second] = std::make_pair(v, &step);
      bfs.push_back(t->second);
    }
  }
  if (goal != 0 && !back[goal]) {
    return std::nullopt;
  }
  std::vector<const CyclicStep*> path;
  for (std::size_t cur = goal; cur != 0;) {
    const auto& link = back[cur];
    path.push_back(link->second);
    cur = link->first;
  }
  std::reverse(path.begin(), path.end());
  RealizedPath out;
  out.steps = detail::realize_path(path, start);
  const Word& last = out.steps.empty() ? start : out.steps.back().target;
  out.closing_rotation = rotation_taking(last, target_class).value();
  out.end = target_class;
  return out;
}

/// Result of reducing a word to a cyclically irreducible form.
struct CyclicFormResult {
  enum class Status { unique, ambiguous, none };
  Status status = Status::none;
  Word word;                     // concrete reached form (unique case)
  Word canonical;                // its rotation class
  std::vector<CyclicStep> chain; // query ->* word
  std::vector<Word> forms;       // all canonical forms discovered
  bool budget_hit = false;
};

/// The cyclically irreducible form of w, when the exploration finds exactly
/// one. Several reachable forms yield `ambiguous`; none reachable yields
/// `none` (definitive only when budget_hit is false).
inline CyclicFormResult cyclic_form(const RewritingSystem& rs, const Word& w,
                                    const ExploreBudget& budget = {}) {
  const ExplorationReport report = explore_cyclic(rs, w, budget);
  CyclicFormResult out;
  out.budget_hit = report.budget_hit;
  out.forms = report.irreducible_forms;
  if (out.forms.empty()) {
    out.status = CyclicFormResult::Status::none;
    return out;
  }
  if (out.forms.size() > 1) {
    out.status = CyclicFormResult::Status::ambiguous;
    return out;
  }
  out.status = CyclicFormResult::Status::unique;
  out.canonical = out.forms.front();
  const auto path = path_to_class(report, out.canonical, w);
  if (path) {
    out.chain = path->steps;
  }
  out.word = out.chain.empty() ? w : out.chain.back().target;
  return out;
}

/// Plain-text adjacency list of an exploration, one node per block.
inline std::string dump_adjacency(const ExplorationReport& report,
                                  const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < report.order.size(); ++i) {
    const Word& node = report.order[i];
    out += "node " + std::to_string(i) + ": " + to_text(alphabet, node) + "\n";
    auto it = report.edges.find(node);
    if (it == report.edges.end()) {
      out += "  (not expanded)\n";
      continue;
    }
    for (const CyclicStep& step : it->second) {
      out += "  rot " + std::to_string(step.rotation) + " ";
      if (step.kind == StepKind::added) {
        out += "cyclic-rule";
      } else {
        out += "rule@" + std::to_string(step.reduction.steps.front().pos);
      }
      out += " -> " + to_text(alphabet, step.target) + "\n";
    }
  }
  return out;
}

/// DOT digraph of an exploration, for external rendering.
inline std::string dump_dot(const ExplorationReport& report, const Alphabet& alphabet) {
  std::string out = "digraph cyclic {\n";
  std::unordered_map<Word, std::size_t, WordHash> index_of;
  for (std::size_t i = 0; i < report.order.size(); ++i) {
    index_of.emplace(report.order[i], i);
    out += "  n" + std::to_string(i) + " [label=\"" + to_text(alphabet, report.order[i])
           + "\"];\n";
  }
  for (std::size_t i = 0; i < report.order.size(); ++i) {
    auto it = report.edges.find(report.order[i]);
    if (it == report.edges.end()) {
      continue;
    }
    for (const CyclicStep& step : it->second) {
      auto t = index_of.find(canonical_rotation(step.target));
      if (t == index_of.end()) {
        continue;
      }
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(t->second)
             + " [label=\"rot " + std::to_string(step.rotation)
             + (step.kind == StepKind::added ? " +" : "") + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace cyrew

#endif  // CYREW_CYCLIC_HPP
