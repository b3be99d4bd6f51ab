// Command-line front end: load rewriting-system files, run reductions,
// cyclic-reduction analyses, completion, and conjugacy queries.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyrew/analysis.hpp"
#include "cyrew/certificate_io.hpp"
#include "cyrew/completion.hpp"
#include "cyrew/conjugacy.hpp"
#include "cyrew/cyclic.hpp"
#include "cyrew/format.hpp"
#include "cyrew/rewrite.hpp"
#include "cyrew/system.hpp"
#include "cyrew/word.hpp"

namespace {

using nlohmann::json;
using namespace cyrew;

struct CommonOptions {
  std::string file;
  std::size_t schema_bound = 4;
  std::size_t steps = kDefaultStepBudget;
  std::size_t max_nodes = 50'000;
  std::size_t max_edges = 500'000;
  std::string format = "text";
  std::string semantics;

  bool structured() const { return format == "structured"; }

  ExploreBudget explore() const { return {max_nodes, max_edges, steps}; }
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("file", opt.file, "system file (.rsys)")->required();
  cmd->add_option("--schema-bound", opt.schema_bound,
                  "value of N in schema ranges n=a..N");
  cmd->add_option("--steps", opt.steps, "ordinary-reduction step budget");
  cmd->add_option("--max-nodes", opt.max_nodes, "exploration node budget");
  cmd->add_option("--max-edges", opt.max_edges, "exploration edge budget");
  cmd->add_option("--format", opt.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--semantics", opt.semantics, "override the semantics flag")
      ->check(CLI::IsMember({"generic", "special", "completely-simple"}));
}

RewritingSystem load(const CommonOptions& opt, std::vector<std::string>* warnings) {
  RewritingSystem rs = load_system(opt.file, LoadOptions{opt.schema_bound}, warnings);
  if (opt.semantics == "generic") {
    rs.set_semantics(Semantics::generic);
  } else if (opt.semantics == "special") {
    rs.set_semantics(Semantics::special);
  } else if (opt.semantics == "completely-simple") {
    rs.set_semantics(Semantics::completely_simple);
  }
  return rs;
}

std::string step_text(const Alphabet& sigma, const CyclicStep& step, bool first) {
  std::string out;
  if (step.rotation != 0 || !first) {
    out += "~" + std::to_string(step.rotation) + "~> "
           + to_text(sigma, step.reduction.start) + " ";
  }
  out += "-> " + to_text(sigma, step.target);
  return out;
}

std::string chain_text(const Alphabet& sigma, const Word& start,
                       const std::vector<CyclicStep>& steps,
                       std::optional<std::size_t> closing) {
  std::string out = to_text(sigma, start);
  bool first = true;
  for (const CyclicStep& step : steps) {
    out += " " + step_text(sigma, step, first);
    first = false;
  }
  if (closing && *closing != 0) {
    const Word& last = steps.empty() ? start : steps.back().target;
    out += " ~" + std::to_string(*closing) + "~> "
           + to_text(sigma, rotate(last, *closing));
  }
  return out;
}

json step_json(const RewritingSystem& rs, const CyclicStep& step) {
  json j;
  j["source"] = to_text(rs.alphabet(), step.source);
  j["rotation"] = step.rotation;
  j["rotated"] = to_text(rs.alphabet(), step.reduction.start);
  j["target"] = to_text(rs.alphabet(), step.target);
  if (step.kind == StepKind::added) {
    j["kind"] = "added";
    j["rule"] = step.cyclic_rule ? rs.cyclic_rules().at(*step.cyclic_rule).id : "?";
  } else {
    j["kind"] = "base";
    j["rule"] = rs.rule(step.reduction.steps.front().rule).id;
    j["position"] = step.reduction.steps.front().pos;
  }
  return j;
}

json witness_json(const RewritingSystem& rs, const CycleWitness& witness) {
  json steps = json::array();
  for (const CyclicStep& step : witness.steps) {
    steps.push_back(step_json(rs, step));
  }
  return json{{"steps", steps}, {"closing_rotation", witness.closing_rotation}};
}

void print_warnings(const std::vector<std::string>& warnings, bool structured) {
  for (const std::string& w : warnings) {
    if (structured) {
      std::cout << json{{"record", "warning"}, {"message", w}} << "\n";
    } else {
      std::cout << "warning: " << w << "\n";
    }
  }
}

int run_reduce(const CommonOptions& opt, const std::string& word_text, bool trace) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  print_warnings(warnings, opt.structured());
  const Word w = parse_word(rs.alphabet(), word_text);
  const NormalFormResult nf = normal_form(rs, w, opt.steps);
  if (opt.structured()) {
    json j{{"record", "reduce"},
           {"word", to_text(rs.alphabet(), w)},
           {"normal_form", to_text(rs.alphabet(), nf.word)},
           {"steps", nf.trace.steps.size()}};
    if (trace) {
      json steps = json::array();
      for (const TraceStep& s : nf.trace.steps) {
        steps.push_back(json{{"rule", rs.rule(s.rule).id}, {"position", s.pos}});
      }
      j["trace"] = steps;
    }
    std::cout << j << "\n";
  } else {
    std::cout << "normal-form: " << to_text(rs.alphabet(), nf.word) << "\n";
    if (trace) {
      Word cur = nf.trace.start;
      for (const TraceStep& s : nf.trace.steps) {
        cur = apply_rule_at(rs, cur, s.rule, s.pos);
        std::cout << "  " << rs.rule(s.rule).id << " @ " << s.pos << " -> "
                  << to_text(rs.alphabet(), cur) << "\n";
      }
    }
  }
  return 0;
}

int run_cyclic_reduce(const CommonOptions& opt, const std::string& word_text) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  print_warnings(warnings, opt.structured());
  const Word w = parse_word(rs.alphabet(), word_text);
  const CyclicFormResult form = cyclic_form(rs, w, opt.explore());
  if (opt.structured()) {
    json j{{"record", "cyclic_form"}, {"word", to_text(rs.alphabet(), w)},
           {"budget_hit", form.budget_hit}};
    switch (form.status) {
      case CyclicFormResult::Status::unique: {
        j["status"] = "unique";
        j["form"] = to_text(rs.alphabet(), form.word);
        j["canonical"] = to_text(rs.alphabet(), form.canonical);
        json chain = json::array();
        for (const CyclicStep& step : form.chain) {
          chain.push_back(step_json(rs, step));
        }
        j["chain"] = chain;
        break;
      }
      case CyclicFormResult::Status::ambiguous: {
        j["status"] = "ambiguous";
        json forms = json::array();
        for (const Word& f : form.forms) {
          forms.push_back(to_text(rs.alphabet(), f));
        }
        j["forms"] = forms;
        break;
      }
      case CyclicFormResult::Status::none:
        j["status"] = "none";
        break;
    }
    std::cout << j << "\n";
  } else {
    switch (form.status) {
      case CyclicFormResult::Status::unique:
        std::cout << "form: " << to_text(rs.alphabet(), form.word) << "\n";
        std::cout << "canonical: " << to_text(rs.alphabet(), form.canonical) << "\n";
        std::cout << "chain: " << chain_text(rs.alphabet(), w, form.chain, std::nullopt)
                  << "\n";
        break;
      case CyclicFormResult::Status::ambiguous: {
        std::string forms;
        for (const Word& f : form.forms) {
          forms += (forms.empty() ? "" : " | ") + to_text(rs.alphabet(), f);
        }
        std::cout << "ambiguous: " << forms << "\n";
        break;
      }
      case CyclicFormResult::Status::none:
        std::cout << "no cyclically irreducible form found"
                  << (form.budget_hit ? " within budget" : "") << "\n";
        break;
    }
    if (form.budget_hit) {
      std::cout << "note: exploration budget hit (max-nodes "
                << opt.max_nodes << ", max-edges " << opt.max_edges << ")\n";
    }
  }
  return 0;
}

int run_irreducible(const CommonOptions& opt, const std::string& word_text) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  print_warnings(warnings, opt.structured());
  const Word w = parse_word(rs.alphabet(), word_text);
  const bool irreducible = is_cyclically_irreducible(rs, w);
  if (opt.structured()) {
    std::cout << json{{"record", "irreducible"},
                      {"word", to_text(rs.alphabet(), w)},
                      {"irreducible", irreducible}}
              << "\n";
  } else {
    std::cout << "cyclically irreducible: " << (irreducible ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_allseq(const CommonOptions& opt, const std::string& word_text) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  print_warnings(warnings, opt.structured());
  const Word w = parse_word(rs.alphabet(), word_text);
  const ExplorationReport report = explore_cyclic(rs, w, opt.explore());

  std::optional<CommutationWitness> commutation;
  CertificateTable certs;
  if (report.witness) {
    try {
      if (!rs.cyclic_rules().empty()) {
        certs = derive_added_certificates(rs, CompletionBudget{1000, opt.explore()});
      }
      commutation = commutation_witness(rs, *report.witness, &certs, opt.steps);
    } catch (const std::exception&) {
      commutation.reset();
    }
  }

  if (opt.structured()) {
    json j{{"record", "allseq"},
           {"word", to_text(rs.alphabet(), w)},
           {"terminates", to_string(report.terminates)},
           {"converges", to_string(report.converges)},
           {"budget_hit", report.budget_hit},
           {"explored_classes", report.order.size()}};
    json forms = json::array();
    for (const Word& f : report.irreducible_forms) {
      forms.push_back(to_text(rs.alphabet(), f));
    }
    j["irreducible_forms"] = forms;
    if (report.witness) {
      j["witness"] = witness_json(rs, *report.witness);
    }
    if (commutation) {
      j["commutation"] = json{{"x", to_text(rs.alphabet(), commutation->x)},
                              {"y", to_text(rs.alphabet(), commutation->y)},
                              {"word", to_text(rs.alphabet(), commutation->word)}};
    }
    std::cout << j << "\n";
  } else {
    std::cout << "word: " << to_text(rs.alphabet(), w) << "\n";
    std::cout << "terminates: " << to_string(report.terminates) << "\n";
    std::cout << "converges: " << to_string(report.converges) << "\n";
    std::cout << "explored-classes: " << report.order.size() << "\n";
    if (report.budget_hit) {
      std::cout << "note: exploration budget hit (max-nodes " << opt.max_nodes
                << ", max-edges " << opt.max_edges << ")\n";
    }
    if (report.irreducible_forms.empty()) {
      std::cout << "irreducible-forms: (none)\n";
    } else {
      for (const Word& f : report.irreducible_forms) {
        std::cout << "form: " << to_text(rs.alphabet(), f) << "\n";
      }
    }
    if (report.witness) {
      std::cout << "witness: "
                << chain_text(rs.alphabet(), report.witness->steps.front().source,
                              report.witness->steps, report.witness->closing_rotation)
                << " (cycle)\n";
    }
    if (commutation) {
      std::cout << "commutation: x = " << to_text(rs.alphabet(), commutation->x)
                << " ; y = " << to_text(rs.alphabet(), commutation->y)
                << " (verified)\n";
    }
  }
  return 0;
}

int run_audit(const CommonOptions& opt) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  print_warnings(warnings, opt.structured());
  const Alphabet& sigma = rs.alphabet();
  const auto reduced = check_reduced(rs);
  const auto critical = check_local_confluence(rs, opt.steps);
  const auto slex = shortlex_violations(rs);
  const auto overlaps = find_cyclic_overlaps(rs, opt.explore(), true);
  const auto inclusions = find_cyclic_inclusions(rs, opt.explore(), true);
  const ConfluenceVerdict verdict = cyclic_confluence_verdict(rs, opt.explore());

  if (opt.structured()) {
    std::cout << json{{"record", "system"},
                      {"rules", rs.rules().size()},
                      {"cyclic_rules", rs.cyclic_rules().size()},
                      {"length_preserving", rs.length_preserving()},
                      {"length_nonincreasing", rs.length_nonincreasing()},
                      {"asserted_complete", rs.asserted_complete()},
                      {"semantics", to_string(rs.semantics())}}
              << "\n";
    for (const auto& v : reduced) {
      std::cout << json{{"record", "reducedness_violation"},
                        {"kind", v.kind == ReducednessViolation::Kind::reducible_rhs
                                     ? "reducible-rhs"
                                     : "nested-lhs"},
                        {"rule", rs.rule(v.rule).id},
                        {"other", rs.rule(v.other).id}}
                << "\n";
    }
    for (const auto& p : critical) {
      std::cout << json{{"record", "unresolved_critical_pair"},
                        {"rule1", rs.rule(p.rule1).id},
                        {"rule2", rs.rule(p.rule2).id},
                        {"peak", to_text(sigma, p.peak)},
                        {"left_nf", to_text(sigma, p.left_nf)},
                        {"right_nf", to_text(sigma, p.right_nf)}}
                << "\n";
    }
    for (const std::string& id : slex) {
      std::cout << json{{"record", "termination_condition_violation"}, {"rule", id}}
                << "\n";
    }
    for (const auto& o : overlaps) {
      std::cout << json{{"record", "cyclic_overlap"},
                        {"rule1", rs.rule(o.rule1).id},
                        {"rule2", rs.rule(o.rule2).id},
                        {"x", to_text(sigma, o.split.x)},
                        {"u", to_text(sigma, o.split.u)},
                        {"y", to_text(sigma, o.split.y)},
                        {"v", to_text(sigma, o.split.v)},
                        {"word", to_text(sigma, o.source)},
                        {"side1", to_text(sigma, o.side1)},
                        {"side2", to_text(sigma, o.side2)},
                        {"trivially_resolved", o.trivially_resolved},
                        {"resolution", to_string(o.resolution.status)}}
                << "\n";
    }
    for (const auto& c : inclusions) {
      std::cout << json{{"record", "cyclic_inclusion"},
                        {"outer", rs.rule(c.outer).id},
                        {"inner", rs.rule(c.inner).id},
                        {"kind", to_string(c.kind)},
                        {"rotation", c.rotation},
                        {"prefix", to_text(sigma, c.prefix)},
                        {"word", to_text(sigma, c.source)},
                        {"side1", to_text(sigma, c.side1)},
                        {"side2", to_text(sigma, c.side2)},
                        {"trivially_resolved", c.trivially_resolved},
                        {"resolution", to_string(c.resolution.status)}}
                << "\n";
    }
    json v{{"record", "cyclic_confluence"},
           {"status", to_string(verdict.status)},
           {"termination", to_string(verdict.termination)},
           {"termination_note", verdict.termination_note},
           {"candidates", verdict.candidates},
           {"unresolved", verdict.unresolved}};
    if (verdict.witness) {
      v["witness"] = to_text(sigma, *verdict.witness);
      json forms = json::array();
      for (const Word& f : verdict.witness_forms) {
        forms.push_back(to_text(sigma, f));
      }
      v["witness_forms"] = forms;
    }
    std::cout << v << "\n";
  } else {
    std::cout << "rules: " << rs.rules().size() << " (+"
              << rs.cyclic_rules().size() << " cyclic)\n";
    std::cout << "length-preserving: " << (rs.length_preserving() ? "yes" : "no")
              << "; length-nonincreasing: "
              << (rs.length_nonincreasing() ? "yes" : "no") << "\n";
    if (reduced.empty()) {
      std::cout << "reduced: yes\n";
    } else {
      for (const auto& v : reduced) {
        std::cout << "reducedness violation: rule " << rs.rule(v.rule).id
                  << (v.kind == ReducednessViolation::Kind::reducible_rhs
                          ? " has a reducible right-hand side (via "
                          : " contains the left-hand side of ")
                  << rs.rule(v.other).id << (v.kind == ReducednessViolation::Kind::reducible_rhs ? ")" : "") << "\n";
      }
    }
    if (critical.empty()) {
      std::cout << "locally confluent (ordinary): yes\n";
    } else {
      for (const auto& p : critical) {
        std::cout << "unresolved critical pair: " << rs.rule(p.rule1).id << "/"
                  << rs.rule(p.rule2).id << " peak " << to_text(sigma, p.peak)
                  << " -> " << to_text(sigma, p.left_nf) << " | "
                  << to_text(sigma, p.right_nf) << "\n";
      }
    }
    if (slex.empty()) {
      std::cout << "termination condition (shortlex): every rule decreases\n";
    } else {
      std::string ids;
      for (const std::string& id : slex) {
        ids += (ids.empty() ? "" : ", ") + id;
      }
      std::cout << "termination condition (shortlex) not met by: " << ids << "\n";
    }
    for (const auto& o : overlaps) {
      std::cout << "cyclic overlap " << rs.rule(o.rule1).id << "/"
                << rs.rule(o.rule2).id << ": x = " << to_text(sigma, o.split.x)
                << ", u = " << to_text(sigma, o.split.u) << ", y = "
                << to_text(sigma, o.split.y) << ", v = " << to_text(sigma, o.split.v)
                << "; word " << to_text(sigma, o.source) << "; reducts "
                << to_text(sigma, o.side1) << " | " << to_text(sigma, o.side2) << "; "
                << (o.trivially_resolved ? "resolves (conjugate reducts)"
                                         : to_string(o.resolution.status))
                << "\n";
    }
    for (const auto& c : inclusions) {
      std::cout << "cyclic inclusion (" << to_string(c.kind) << ") "
                << rs.rule(c.inner).id << " in " << rs.rule(c.outer).id << ": word "
                << to_text(sigma, c.source) << "; reducts " << to_text(sigma, c.side1)
                << " | " << to_text(sigma, c.side2) << "; "
                << (c.trivially_resolved ? "resolves (conjugate reducts)"
                                         : to_string(c.resolution.status))
                << "\n";
    }
    std::cout << "cyclic confluence: " << to_string(verdict.status);
    if (verdict.witness) {
      std::cout << " (witness " << to_text(sigma, *verdict.witness) << " with forms";
      for (const Word& f : verdict.witness_forms) {
        std::cout << " " << to_text(sigma, f);
      }
      std::cout << ")";
    }
    std::cout << "\n";
    std::cout << "cyclic termination: " << to_string(verdict.termination) << " ("
              << verdict.termination_note << ")\n";
  }
  return 0;
}

int run_complete(const CommonOptions& opt, const std::string& out_path,
                 const std::string& log_path, long verify_upto,
                 std::size_t max_added) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  print_warnings(warnings, opt.structured());
  const CompletionOutcome outcome =
      cyclical_completion(rs, CompletionBudget{max_added, opt.explore()});

  std::string log_text;
  for (const std::string& line : outcome.log) {
    log_text += line + "\n";
  }
  if (!log_path.empty()) {
    std::ofstream out(log_path);
    out << log_text;
  }
  const std::string serialized = serialize_system(outcome.system);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << serialized;
  }

  if (opt.structured()) {
    json added = json::array();
    for (const AddedReduction& a : outcome.added) {
      json e{{"id", a.rule.id},
             {"lhs", to_text(rs.alphabet(), a.rule.lhs)},
             {"rhs", to_text(rs.alphabet(), a.rule.rhs)},
             {"origin", a.origin}};
      if (a.conjugators) {
        e["x"] = to_text(rs.alphabet(), a.conjugators->first);
        e["y"] = to_text(rs.alphabet(), a.conjugators->second);
      }
      added.push_back(e);
    }
    json j{{"record", "completion"},
           {"status", to_string(outcome.status)},
           {"added", added},
           {"unresolved", outcome.unresolved},
           {"log", outcome.log}};
    if (!outcome.failure.empty()) {
      j["failure"] = outcome.failure;
    }
    std::cout << j << "\n";
  } else {
    std::cout << log_text;
    std::cout << "status: " << to_string(outcome.status) << "\n";
    if (!outcome.failure.empty()) {
      std::cout << "failure: " << outcome.failure << "\n";
    }
    for (const AddedReduction& a : outcome.added) {
      std::cout << "added " << a.rule.id << ": " << to_text(rs.alphabet(), a.rule.lhs)
                << " ~> " << to_text(rs.alphabet(), a.rule.rhs) << "\n";
    }
    if (out_path.empty()) {
      std::cout << serialized;
    }
  }

  if (verify_upto >= 0 && outcome.status == CompletionStatus::completed) {
    const CompletenessReport report = verify_cyclically_complete(
        outcome.system, static_cast<std::size_t>(verify_upto), opt.explore());
    if (opt.structured()) {
      json ambiguous = json::array(), formless = json::array();
      for (const Word& w : report.ambiguous) {
        ambiguous.push_back(to_text(rs.alphabet(), w));
      }
      for (const Word& w : report.formless) {
        formless.push_back(to_text(rs.alphabet(), w));
      }
      std::cout << json{{"record", "completeness"},
                        {"classes_checked", report.classes_checked},
                        {"ambiguous", ambiguous},
                        {"formless", formless},
                        {"undecided", report.undecided.size()},
                        {"ok", report.ok()}}
                << "\n";
    } else {
      std::cout << "completeness check (words up to length " << verify_upto
                << "): " << report.classes_checked << " classes, "
                << report.ambiguous.size() << " ambiguous, "
                << report.formless.size() << " without any form, "
                << report.undecided.size() << " undecided\n";
      for (const Word& w : report.ambiguous) {
        std::cout << "  ambiguous: " << to_text(rs.alphabet(), w) << "\n";
      }
      for (const Word& w : report.formless) {
        std::cout << "  no form: " << to_text(rs.alphabet(), w) << "\n";
      }
    }
  }
  return outcome.status == CompletionStatus::completed ? 0 : 1;
}

int run_conjugate(const CommonOptions& opt, const std::string& u_text,
                  const std::string& v_text, const std::string& cert_out) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  print_warnings(warnings, opt.structured());
  const Word u = parse_word(rs.alphabet(), u_text);
  const Word v = parse_word(rs.alphabet(), v_text);

  CertificateTable certs;
  if (!rs.cyclic_rules().empty()) {
    certs = derive_added_certificates(rs, CompletionBudget{1000, opt.explore()});
  }
  const ConjugacyVerdict verdict = conjugacy_test(rs, u, v, opt.explore(), &certs);

  const bool positive = verdict.result != ConjugacyResult::unknown;
  if (opt.structured()) {
    json j{{"record", "conjugacy"},
           {"u", to_text(rs.alphabet(), u)},
           {"v", to_text(rs.alphabet(), v)},
           {"result", positive ? "conjugate" : "unknown"},
           {"route", verdict.result == ConjugacyResult::transposed_chain
                         ? "rotation"
                         : "exploration"},
           {"note", verdict.semantics_note}};
    if (verdict.certificate) {
      j["x"] = to_text(rs.alphabet(), verdict.certificate->x);
      j["y"] = to_text(rs.alphabet(), verdict.certificate->y);
      j["meet"] = to_text(rs.alphabet(), verdict.certificate->meet);
    }
    if (!positive) {
      j["reason"] = to_string(verdict.reason);
      if (verdict.reason == UnknownReason::budget) {
        j["budget"] = json{{"max_nodes", opt.max_nodes}, {"max_edges", opt.max_edges}};
      }
    }
    std::cout << j << "\n";
  } else {
    if (positive) {
      std::cout << "result: conjugate";
      if (verdict.result == ConjugacyResult::transposed_chain) {
        std::cout << " (transposed: u = x y, v = y x with x = "
                  << to_text(rs.alphabet(), verdict.certificate->x) << ", y = "
                  << to_text(rs.alphabet(), verdict.certificate->y) << ")";
      }
      std::cout << "\n";
      std::cout << "meet: " << to_text(rs.alphabet(), verdict.certificate->meet)
                << "\n";
      std::cout << "x: " << to_text(rs.alphabet(), verdict.certificate->x) << "\n";
      std::cout << "y: " << to_text(rs.alphabet(), verdict.certificate->y) << "\n";
    } else {
      std::cout << "result: unknown\n";
      std::cout << "reason: " << to_string(verdict.reason);
      if (verdict.reason == UnknownReason::budget) {
        std::cout << " (max-nodes " << opt.max_nodes << ", max-edges "
                  << opt.max_edges << ")";
      }
      std::cout << "\n";
    }
    std::cout << "note: " << verdict.semantics_note << "\n";
  }
  if (!cert_out.empty() && verdict.certificate) {
    std::ofstream out(cert_out);
    out << serialize_certificate(rs, *verdict.certificate);
  }
  return 0;
}

int run_classes(const CommonOptions& opt, std::size_t length, std::size_t max_words) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  print_warnings(warnings, opt.structured());
  const MutualClasses classes = mutual_reduction_classes(rs, length, max_words,
                                                         opt.explore());
  if (opt.structured()) {
    for (std::size_t i = 0; i < classes.classes.size(); ++i) {
      json members = json::array();
      for (const Word& w : classes.classes[i]) {
        members.push_back(to_text(rs.alphabet(), w));
      }
      std::cout << json{{"record", "class"},
                        {"index", i},
                        {"members", members},
                        {"has_irreducible", classes.has_irreducible[i] != 0},
                        {"genuine", classes.genuine[i] != 0}}
                << "\n";
    }
  } else {
    std::cout << "classes of length-" << length << " words: "
              << classes.classes.size() << "\n";
    for (std::size_t i = 0; i < classes.classes.size(); ++i) {
      std::cout << "class " << i << ":";
      for (const Word& w : classes.classes[i]) {
        std::cout << " " << to_text(rs.alphabet(), w) << " |";
      }
      std::cout << (classes.genuine[i] ? " mutual" : " single") << ", "
                << (classes.has_irreducible[i] ? "has irreducible"
                                               : "no irreducible")
                << "\n";
    }
  }
  return 0;
}

int run_verify(const CommonOptions& opt, const std::string& cert_path,
               long completeness_upto, std::size_t max_words) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  print_warnings(warnings, opt.structured());
  if (!cert_path.empty()) {
    std::ifstream in(cert_path);
    if (!in) {
      throw FileError("cannot read '" + cert_path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const Certificate cert = parse_certificate(rs, buffer.str());
    std::string why;
    const bool valid = verify_certificate(rs, cert, opt.steps, &why);
    if (opt.structured()) {
      json j{{"record", "certificate"},
             {"valid", valid},
             {"u", to_text(rs.alphabet(), cert.u)},
             {"v", to_text(rs.alphabet(), cert.v)}};
      if (!valid) {
        j["reason"] = why;
      }
      std::cout << j << "\n";
    } else {
      std::cout << "certificate: " << (valid ? "valid" : "INVALID (" + why + ")")
                << "\n";
    }
    return valid ? 0 : 1;
  }
  const CompletenessReport report = verify_cyclically_complete(
      rs, static_cast<std::size_t>(completeness_upto), opt.explore(), max_words);
  if (opt.structured()) {
    json ambiguous = json::array(), formless = json::array();
    for (const Word& w : report.ambiguous) {
      ambiguous.push_back(to_text(rs.alphabet(), w));
    }
    for (const Word& w : report.formless) {
      formless.push_back(to_text(rs.alphabet(), w));
    }
    std::cout << json{{"record", "completeness"},
                      {"classes_checked", report.classes_checked},
                      {"ambiguous", ambiguous},
                      {"formless", formless},
                      {"undecided", report.undecided.size()},
                      {"ok", report.ok()}}
              << "\n";
  } else {
    std::cout << "classes checked: " << report.classes_checked << "\n";
    for (const Word& w : report.ambiguous) {
      std::cout << "ambiguous: " << to_text(rs.alphabet(), w) << "\n";
    }
    for (const Word& w : report.formless) {
      std::cout << "no form: " << to_text(rs.alphabet(), w) << "\n";
    }
    std::cout << "verdict: " << (report.ok() ? "every class has at most one form"
                                             : "ambiguities or undecided classes found")
              << "\n";
  }
  return report.ok() ? 0 : 1;
}

int run_dump_graph(const CommonOptions& opt, const std::string& word_text, bool dot) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = load(opt, &warnings);
  if (!warnings.empty() && !dot) {
    print_warnings(warnings, false);
  }
  const Word w = parse_word(rs.alphabet(), word_text);
  const ExplorationReport report = explore_cyclic(rs, w, opt.explore());
  std::cout << (dot ? dump_dot(report, rs.alphabet())
                    : dump_adjacency(report, rs.alphabet()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclic rewriting over monoid presentations"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string word1, word2, out_path, log_path, cert_path;
  bool trace = false, dot = false;
  long verify_upto = -1, completeness_upto = 5;
  std::size_t length = 0, max_words = 200'000, max_added = 1000;

  auto* reduce = app.add_subcommand("reduce", "normal form of a word");
  add_common(reduce, opt);
  reduce->add_option("word", word1, "word (symbol names separated by spaces)")
      ->required();
  reduce->add_flag("--trace", trace, "print each reduction step");

  auto* cyclic_reduce =
      app.add_subcommand("cyclic-reduce", "cyclically irreducible form of a word");
  add_common(cyclic_reduce, opt);
  cyclic_reduce->add_option("word", word1, "word")->required();

  auto* irreducible =
      app.add_subcommand("irreducible", "is the word cyclically irreducible?");
  add_common(irreducible, opt);
  irreducible->add_option("word", word1, "word")->required();

  auto* allseq = app.add_subcommand(
      "allseq", "explore every sequence of cyclic reductions from a word");
  add_common(allseq, opt);
  allseq->add_option("word", word1, "word")->required();

  auto* audit = app.add_subcommand(
      "audit", "static checks: reducedness, confluence, overlap/inclusion sites");
  add_common(audit, opt);

  auto* complete = app.add_subcommand("complete", "run cyclical completion");
  add_common(complete, opt);
  complete->add_option("-o,--output", out_path, "write the completed system here");
  complete->add_option("--log", log_path, "write the completion log here");
  complete->add_option("--verify-upto", verify_upto,
                       "also check uniqueness of forms for words up to this length");
  complete->add_option("--max-added", max_added, "cap on added cyclic rules");

  auto* conjugate = app.add_subcommand("conjugate", "conjugacy query with certificate");
  add_common(conjugate, opt);
  conjugate->add_option("u", word1, "first word")->required();
  conjugate->add_option("v", word2, "second word")->required();
  conjugate->add_option("--cert-out", cert_path, "write the certificate here");

  auto* classes = app.add_subcommand(
      "classes", "mutual-reduction classes of all words of one length");
  add_common(classes, opt);
  classes->add_option("--length", length, "word length")->required();
  classes->add_option("--max-words", max_words, "enumeration limit");

  auto* verify = app.add_subcommand(
      "verify", "re-check a certificate, or uniqueness of forms per word class");
  add_common(verify, opt);
  auto* vcert = verify->add_option("--certificate", cert_path,
                                   "certificate file to re-check");
  verify->add_option("--completeness-upto", completeness_upto,
                     "check words up to this length instead");
  verify->add_option("--max-words", max_words, "enumeration limit");

  auto* dump = app.add_subcommand("dump-graph", "dump the exploration graph");
  add_common(dump, opt);
  dump->add_option("word", word1, "word")->required();
  dump->add_flag("--dot", dot, "emit DOT instead of an adjacency list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (reduce->parsed()) {
      return run_reduce(opt, word1, trace);
    }
    if (cyclic_reduce->parsed()) {
      return run_cyclic_reduce(opt, word1);
    }
    if (irreducible->parsed()) {
      return run_irreducible(opt, word1);
    }
    if (allseq->parsed()) {
      return run_allseq(opt, word1);
    }
    if (audit->parsed()) {
      return run_audit(opt);
    }
    if (complete->parsed()) {
      return run_complete(opt, out_path, log_path, verify_upto, max_added);
    }
    if (conjugate->parsed()) {
      return run_conjugate(opt, word1, word2, cert_path);
    }
    if (classes->parsed()) {
      return run_classes(opt, length, max_words);
    }
    if (verify->parsed()) {
      return run_verify(opt, vcert->count() > 0 ? cert_path : "", completeness_upto,
                        max_words);
    }
    if (dump->parsed()) {
      return run_dump_graph(opt, word1, dot);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CertificateError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
