#ifndef CYREW_CERTIFICATE_IO_HPP
#define CYREW_CERTIFICATE_IO_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cyrew/conjugacy.hpp"
#include "cyrew/format.hpp"

namespace cyrew {

/// Text form of a certificate: the four words, the meeting word, and the two
/// replayable step lists. Everything needed to re-check it independently.
inline std::string serialize_certificate(const RewritingSystem& rs,
                                         const Certificate& cert) {
  const Alphabet& sigma = rs.alphabet();
  std::string out = "certificate\n";
  out += "u: " + to_text(sigma, cert.u) + "\n";
  out += "v: " + to_text(sigma, cert.v) + "\n";
  out += "x: " + to_text(sigma, cert.x) + "\n";
  out += "y: " + to_text(sigma, cert.y) + "\n";
  out += "meet: " + to_text(sigma, cert.meet) + "\n";
  out += "chain-rotation: " + std::to_string(cert.chain_rotation) + "\n";
  out += "cochain-rotation: " + std::to_string(cert.cochain_rotation) + "\n";
  auto emit = [&](const char* name, const std::vector<CyclicStep>& steps) {
    for (const CyclicStep& step : steps) {
      out += std::string(name) + ": " + to_text(sigma, step.source) + " | "
             + std::to_string(step.rotation) + " | ";
      if (step.kind == StepKind::added) {
        out += "cyclic ";
        out += step.cyclic_rule ? rs.cyclic_rules().at(*step.cyclic_rule).id
                                : std::string("?");
      } else {
        out += rs.rule(step.reduction.steps.front().rule).id + " @ "
               + std::to_string(step.reduction.steps.front().pos);
      }
      out += " | " + to_text(sigma, step.target) + "\n";
    }
  };
  emit("chain-step", cert.chain);
  emit("cochain-step", cert.cochain);
  out += "end\n";
  return out;
}

inline Certificate parse_certificate(const RewritingSystem& rs, std::string_view text) {
  const Alphabet& sigma = rs.alphabet();
  Certificate cert;
  std::istringstream stream{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool seen_header = false;
  bool seen_end = false;

  auto trim = [](std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.erase(s.begin());
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.pop_back();
    }
    return s;
  };

  auto parse_step = [&](const std::string& payload) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= payload.size(); ++i) {
      if (i == payload.size() || payload[i] == '|') {
        fields.push_back(trim(payload.substr(start, i - start)));
        start = i + 1;
      }
    }
    if (fields.size() != 4) {
      throw ParseError("step needs 'source | rotation | rule | target'", line_no, 1);
    }
    CyclicStep step;
    step.source = parse_word(sigma, fields[0], line_no);
    step.rotation = static_cast<std::size_t>(std::stoul(fields[1]));
    step.target = parse_word(sigma, fields[3], line_no);
    const Word rotated = rotate(step.source, step.rotation);
    if (fields[2].rfind("cyclic", 0) == 0) {
      step.kind = StepKind::added;
      step.reduction = {rotated, step.target, {}};
      const std::string id = trim(fields[2].substr(6));
      for (std::size_t c = 0; c < rs.cyclic_rules().size(); ++c) {
        if (rs.cyclic_rules()[c].id == id) {
          step.cyclic_rule = c;
          break;
        }
      }
    } else {
      const auto at = fields[2].find('@');
      if (at == std::string::npos) {
        throw ParseError("base step needs 'rule @ pos'", line_no, 1);
      }
      const std::string id = trim(fields[2].substr(0, at));
      const std::size_t pos =
          static_cast<std::size_t>(std::stoul(trim(fields[2].substr(at + 1))));
      std::size_t rule = 0;
      try {
        rule = rs.rule_index(id);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no, 1);
      }
      step.kind = StepKind::base;
      step.reduction = {rotated, step.target, {{rule, pos}}};
    }
    return step;
  };

  while (std::getline(stream, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    if (line == "certificate") {
      seen_header = true;
      continue;
    }
    if (line == "end") {
      seen_end = true;
      break;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("expected 'field: value'", line_no, 1);
    }
    const std::string field = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (field == "u") {
      cert.u = parse_word(sigma, value, line_no);
    } else if (field == "v") {
      cert.v = parse_word(sigma, value, line_no);
    } else if (field == "x") {
      cert.x = parse_word(sigma, value, line_no);
    } else if (field == "y") {
      cert.y = parse_word(sigma, value, line_no);
    } else if (field == "meet") {
      cert.meet = parse_word(sigma, value, line_no);
    } else if (field == "chain-rotation") {
      cert.chain_rotation = static_cast<std::size_t>(std::stoul(value));
    } else if (field == "cochain-rotation") {
      cert.cochain_rotation = static_cast<std::size_t>(std::stoul(value));
    } else if (field == "chain-step") {
      cert.chain.push_back(parse_step(value));
    } else if (field == "cochain-step") {
      cert.cochain.push_back(parse_step(value));
    } else {
      throw ParseError("unknown certificate field '" + field + "'", line_no, 1);
    }
  }
  if (!seen_header || !seen_end) {
    throw ParseError("certificate must be enclosed in 'certificate' ... 'end'",
                     line_no == 0 ? 1 : line_no, 1);
  }
  return cert;
}

}  // namespace cyrew

#endif  // CYREW_CERTIFICATE_IO_HPP
