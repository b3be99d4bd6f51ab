#ifndef CYREW_FORMAT_HPP
#define CYREW_FORMAT_HPP

#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cyrew/system.hpp"
#include "cyrew/word.hpp"

namespace cyrew {

/// Error in a system file or a word argument, carrying the 1-based line and
/// column of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column "
                           + std::to_string(column) + ": " + message),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

/// A file that could not be opened or read at all.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadOptions {
  std::size_t schema_bound = 4;  // value of N in `n=a..N` schema ranges
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based offset in the source line
};

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i >= text.size()) {
      break;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    out.push_back({std::string(text.substr(start, i - start)), start + 1});
  }
  return out;
}

/// Exponent of a schema token: a constant, or n plus a constant offset.
struct Exponent {
  bool uses_n = false;
  long offset = 0;

  long value(long n) const { return uses_n ? n + offset : offset; }
};

inline std::optional<Exponent> parse_exponent(std::string_view text) {
  Exponent e;
  if (text == "n") {
    e.uses_n = true;
    return e;
  }
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    std::string_view inner = text.substr(1, text.size() - 2);
    if (inner.empty() || inner.front() != 'n') {
      return std::nullopt;
    }
    inner.remove_prefix(1);
    if (inner.empty()) {
      e.uses_n = true;
      return e;
    }
    const char sign = inner.front();
    if (sign != '+' && sign != '-') {
      return std::nullopt;
    }
    inner.remove_prefix(1);
    if (inner.empty()) {
      return std::nullopt;
    }
    long k = 0;
    for (char c : inner) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        return std::nullopt;
      }
      k = k * 10 + (c - '0');
    }
    e.uses_n = true;
    e.offset = sign == '-' ? -k : k;
    return e;
  }
  if (text.empty()) {
    return std::nullopt;
  }
  long k = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return std::nullopt;
    }
    k = k * 10 + (c - '0');
  }
  e.offset = k;
  return e;
}

}  // namespace detail

/// Parses a whitespace-separated word over the alphabet. The single token
/// "1" denotes the empty word unless "1" is itself a declared symbol.
inline Word parse_word(const Alphabet& alphabet, std::string_view text,
                       std::size_t line = 1, std::size_t column_base = 0) {
  const auto tokens = detail::tokenize(text);
  if (tokens.size() == 1 && tokens[0].text == "1" && !alphabet.find("1")) {
    return {};
  }
  Word out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    const auto sym = alphabet.find(tok.text);
    if (!sym) {
      throw ParseError("unknown symbol '" + tok.text + "'", line,
                       column_base + tok.column);
    }
    out.push_back(*sym);
  }
  return out;
}

inline std::string format_word(const Alphabet& alphabet, const Word& w) {
  return to_text(alphabet, w);
}

/// Parses a system file. Directives: `alphabet:`, `rule: l -> r`,
/// `schema: l -> r ; n=LO..HI` (HI may be the letter N, resolved from
/// options), `cyclic-rule: l ~> r`, `option: complete`,
/// `option: semantics=<generic|special|completely-simple>`. `#` starts a
/// comment. Warnings (schema truncation, length-increasing rules) are
/// appended to *warnings when given.
inline RewritingSystem parse_system(std::string_view text, const LoadOptions& options = {},
                                    std::vector<std::string>* warnings = nullptr) {
  std::optional<Alphabet> alphabet;
  std::vector<Rule> rules;
  std::vector<std::pair<CyclicRule, std::size_t>> cyclic;  // rule + line
  bool asserted_complete = false;
  Semantics semantics = Semantics::generic;
  bool truncated = false;
  std::size_t line_no = 0;
  std::size_t rule_counter = 0;
  std::size_t cyclic_counter = 0;

  auto warn = [&](const std::string& message) {
    if (warnings != nullptr) {
      warnings->push_back(message);
    }
  };

  std::istringstream stream{std::string(text)};
  std::string raw;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) {
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'directive: ...'", line_no, 1);
    }
    std::string directive(line.substr(0, colon));
    while (!directive.empty()
           && std::isspace(static_cast<unsigned char>(directive.back()))) {
      directive.pop_back();
    }
    const std::string_view payload = line.substr(colon + 1);
    const std::size_t payload_base = colon + 1;

    auto need_alphabet = [&]() -> const Alphabet& {
      if (!alphabet) {
        throw ParseError("'" + directive + "' before 'alphabet:'", line_no, 1);
      }
      return *alphabet;
    };
    auto parse_side = [&](std::string_view side, std::size_t base) {
      return parse_word(need_alphabet(), side, line_no, base);
    };

    if (directive == "alphabet") {
      if (alphabet) {
        throw ParseError("duplicate 'alphabet:' line", line_no, 1);
      }
      std::vector<std::string> names;
      for (const auto& tok : detail::tokenize(payload)) {
        names.push_back(tok.text);
      }
      if (names.empty()) {
        throw ParseError("alphabet is empty", line_no, payload_base + 1);
      }
      try {
        alphabet = Alphabet(std::move(names));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no, payload_base + 1);
      }
    } else if (directive == "rule") {
      const auto arrow = payload.find("->");
      if (arrow == std::string_view::npos) {
        throw ParseError("rule needs '->'", line_no, payload_base + 1);
      }
      Rule r;
      r.lhs = parse_side(payload.substr(0, arrow), payload_base);
      r.rhs = parse_side(payload.substr(arrow + 2), payload_base + arrow + 2);
      r.id = "r" + std::to_string(++rule_counter);
      if (r.lhs.empty()) {
        throw ParseError("rule " + r.id + ": left-hand side is empty", line_no,
                         payload_base + 1);
      }
      if (r.lhs == r.rhs) {
        throw ParseError("rule " + r.id + ": both sides are equal", line_no,
                         payload_base + 1);
      }
      rules.push_back(std::move(r));
    } else if (directive == "schema") {
      const auto semi = payload.find(';');
      if (semi == std::string_view::npos) {
        throw ParseError("schema needs '; n=LO..HI'", line_no, payload_base + 1);
      }
      const std::string_view body = payload.substr(0, semi);
      std::string range(payload.substr(semi + 1));
      std::erase_if(range, [](char c) {
        return std::isspace(static_cast<unsigned char>(c));
      });
      if (range.size() < 6 || range.compare(0, 2, "n=") != 0) {
        throw ParseError("schema range must look like 'n=2..N'", line_no,
                         payload_base + semi + 2);
      }
      const auto dots = range.find("..");
      if (dots == std::string::npos) {
        throw ParseError("schema range must look like 'n=2..N'", line_no,
                         payload_base + semi + 2);
      }
      long lo = 0;
      try {
        lo = std::stol(range.substr(2, dots - 2));
      } catch (const std::exception&) {
        throw ParseError("bad schema lower bound", line_no, payload_base + semi + 2);
      }
      const std::string hi_text = range.substr(dots + 2);
      long hi = 0;
      if (hi_text == "N") {
        hi = static_cast<long>(options.schema_bound);
        truncated = true;
        warn("schema at line " + std::to_string(line_no) + " instantiated up to n="
             + std::to_string(hi) + "; words longer than the largest rule may be "
             + "analyzed incompletely");
      } else {
        try {
          hi = std::stol(hi_text);
        } catch (const std::exception&) {
          throw ParseError("bad schema upper bound", line_no,
                           payload_base + semi + 2);
        }
      }
      if (lo < 0 || hi < lo) {
        throw ParseError("empty schema range", line_no, payload_base + semi + 2);
      }

      const auto arrow = body.find("->");
      if (arrow == std::string_view::npos) {
        throw ParseError("schema needs '->'", line_no, payload_base + 1);
      }
      struct SchemaAtom {
        Symbol symbol;
        detail::Exponent exponent;
      };
      auto parse_schema_side = [&](std::string_view side, std::size_t base) {
        std::vector<SchemaAtom> atoms;
        for (const auto& tok : detail::tokenize(side)) {
          const Alphabet& sigma = need_alphabet();
          if (const auto sym = sigma.find(tok.text)) {
            atoms.push_back({*sym, detail::Exponent{false, 1}});
            continue;
          }
          const auto caret = tok.text.rfind('^');
          if (caret == std::string::npos) {
            throw ParseError("unknown symbol '" + tok.text + "'", line_no,
                             base + tok.column);
          }
          const auto sym = sigma.find(tok.text.substr(0, caret));
          const auto exp = detail::parse_exponent(
              std::string_view(tok.text).substr(caret + 1));
          if (!sym || !exp) {
            throw ParseError("bad schema token '" + tok.text + "'", line_no,
                             base + tok.column);
          }
          atoms.push_back({*sym, *exp});
        }
        return atoms;
      };
      const auto lhs_atoms = parse_schema_side(body.substr(0, arrow), payload_base);
      const auto rhs_atoms = parse_schema_side(body.substr(arrow + 2),
                                               payload_base + arrow + 2);
      ++rule_counter;
      for (long n = lo; n <= hi; ++n) {
        auto instantiate = [&](const std::vector<SchemaAtom>& atoms) {
          Word w;
          for (const SchemaAtom& atom : atoms) {
            const long count = atom.exponent.value(n);
            if (count < 0) {
              throw ParseError("schema exponent is negative at n="
                               + std::to_string(n), line_no, payload_base + 1);
            }
            for (long i = 0; i < count; ++i) {
              w.push_back(atom.symbol);
            }
          }
          return w;
        };
        Rule r;
        r.lhs = instantiate(lhs_atoms);
        r.rhs = instantiate(rhs_atoms);
        r.id = "r" + std::to_string(rule_counter) + "[n=" + std::to_string(n) + "]";
        if (r.lhs.empty()) {
          throw ParseError("schema instance " + r.id + " has an empty left-hand side",
                           line_no, payload_base + 1);
        }
        if (r.lhs == r.rhs) {
          throw ParseError("schema instance " + r.id + " has equal sides", line_no,
                           payload_base + 1);
        }
        rules.push_back(std::move(r));
      }
    } else if (directive == "cyclic-rule") {
      const auto arrow = payload.find("~>");
      if (arrow == std::string_view::npos) {
        throw ParseError("cyclic-rule needs '~>'", line_no, payload_base + 1);
      }
      CyclicRule r;
      r.lhs = parse_side(payload.substr(0, arrow), payload_base);
      r.rhs = parse_side(payload.substr(arrow + 2), payload_base + arrow + 2);
      r.id = "c" + std::to_string(++cyclic_counter);
      if (r.lhs == r.rhs) {
        throw ParseError("cyclic rule " + r.id + ": both sides are equal", line_no,
                         payload_base + 1);
      }
      cyclic.emplace_back(std::move(r), line_no);
    } else if (directive == "option") {
      std::string value;
      for (const auto& tok : detail::tokenize(payload)) {
        if (!value.empty()) {
          throw ParseError("options take a single value", line_no,
                           payload_base + tok.column);
        }
        value = tok.text;
      }
      if (value == "complete") {
        asserted_complete = true;
      } else if (value == "semantics=generic") {
        semantics = Semantics::generic;
      } else if (value == "semantics=special") {
        semantics = Semantics::special;
      } else if (value == "semantics=completely-simple") {
        semantics = Semantics::completely_simple;
      } else {
        throw ParseError("unknown option '" + value + "'", line_no, payload_base + 1);
      }
    } else {
      throw ParseError("unknown directive '" + directive + "'", line_no, 1);
    }
  }

  if (!alphabet) {
    throw ParseError("missing 'alphabet:' line", line_no == 0 ? 1 : line_no, 1);
  }
  RewritingSystem rs(*alphabet, std::move(rules));
  rs.set_asserted_complete(asserted_complete);
  rs.set_semantics(semantics);
  rs.set_truncated_schemas(truncated);
  for (auto& [rule, line] : cyclic) {
    try {
      rs.add_cyclic_rule(std::move(rule));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line, 1);
    }
  }
  for (const Rule& r : rs.rules()) {
    if (r.lhs.size() < r.rhs.size()) {
      warn("rule " + r.id + " increases length; schema truncation and bounded "
           "explorations may then be unsound");
    }
  }
  return rs;
}

inline RewritingSystem load_system(const std::string& path, const LoadOptions& options = {},
                                   std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path);
  if (!in) {
    throw FileError("cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_system(buffer.str(), options, warnings);
}

/// Writes a system back in the file format; schemas are emitted as their
/// instantiated rules. Output is byte-deterministic for a given system.
inline std::string serialize_system(const RewritingSystem& rs) {
  std::string out;
  out += "alphabet:";
  for (const std::string& name : rs.alphabet().names()) {
    out += ' ';
    out += name;
  }
  out += '\n';
  if (rs.asserted_complete()) {
    out += "option: complete\n";
  }
  if (rs.semantics() != Semantics::generic) {
    out += std::string("option: semantics=") + to_string(rs.semantics()) + "\n";
  }
  for (const Rule& r : rs.rules()) {
    out += "rule: " + to_text(rs.alphabet(), r.lhs) + " -> "
           + to_text(rs.alphabet(), r.rhs) + "\n";
  }
  for (const CyclicRule& r : rs.cyclic_rules()) {
    out += "cyclic-rule: " + to_text(rs.alphabet(), r.lhs) + " ~> "
           + to_text(rs.alphabet(), r.rhs) + "\n";
  }
  return out;
}

}  // namespace cyrew

#endif  // CYREW_FORMAT_HPP
