#include "cgt/presentation.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cgt {

  namespace {

    std::string_view trim(std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
      }
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
      }
      return s;
    }

    // Offset of `part` inside `line`; both view the same buffer.
    std::size_t offset_in(std::string_view line, std::string_view part) {
      return static_cast<std::size_t>(part.data() - line.data());
    }

  }  // namespace

  PresentationFile parse_presentation(std::string_view text) {
    PresentationFile          f;
    bool                      have_gens = false, have_rels = false;
    std::vector<std::string>  seen;
    std::size_t               lineno = 0;
    std::size_t               start  = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      end             = end == std::string_view::npos ? text.size() : end;
      std::string_view line = text.substr(start, end - start);
      start                 = end + 1;
      ++lineno;
      auto fail = [&](std::string const& msg, std::size_t col) {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg, col);
      };
      std::string_view body = trim(line);
      if (body.empty() || body.front() == '#') {
        continue;
      }
      std::size_t colon = body.find(':');
      if (colon == std::string_view::npos) {
        fail("expected 'section: ...'", offset_in(line, body));
      }
      std::string key(trim(body.substr(0, colon)));
      std::string_view value = body.substr(colon + 1);
      std::size_t      vpos  = offset_in(line, value);
      for (auto const& k : seen) {
        if (k == key) {
          fail("duplicate section '" + key + "'", offset_in(line, body));
        }
      }
      seen.push_back(key);
      if (key != "gens" && !have_gens) {
        fail("'gens:' must come first", offset_in(line, body));
      }
      try {
        if (key == "gens") {
          std::vector<std::string> names;
          std::istringstream       in{std::string(value)};
          for (std::string name; in >> name;) {
            names.push_back(name);
          }
          f.base.alphabet = Alphabet(names);
          have_gens       = true;
        } else if (key == "rels") {
          f.base.relators = parse_word_list(f.base.alphabet, value);
          have_rels       = true;
        } else if (key == "stable") {
          std::string name(trim(value));
          if (!Alphabet::valid_identifier(name)) {
            fail("invalid stable letter \"" + name + "\"", vpos);
          }
          if (f.base.alphabet.index_of(name)) {
            fail("stable letter " + name + " is also a generator", vpos);
          }
          f.stable = name;
        } else if (key == "assoc") {
          f.assoc = parse_word_list(f.base.alphabet, value);
        } else if (key == "endo") {
          f.endo = parse_endo(f.base.alphabet, value);
        } else if (key == "truncated") {
          std::string digits(trim(value));
          if (digits.empty()
              || digits.find_first_not_of("0123456789") != std::string::npos) {
            fail("truncation depth must be a natural number", vpos);
          }
          f.truncated = std::stoul(digits);
        } else {
          fail("unknown section '" + key + "'", offset_in(line, body));
        }
      } catch (ParseError const& e) {
        if (e.message().rfind("line ", 0) == 0) {
          throw;
        }
        fail(e.message(), vpos + e.position());
      } catch (InputError const& e) {
        fail(e.what(), vpos);
      }
    }
    if (!have_gens) {
      throw ParseError("missing 'gens:' line", 0);
    }
    if (!have_rels) {
      throw ParseError("missing 'rels:' line", 0);
    }
    bool hnn_parts = !f.assoc.empty() || f.endo || f.truncated;
    if (hnn_parts && !f.stable) {
      throw ParseError("'assoc:', 'endo:' and 'truncated:' need 'stable:'", 0);
    }
    return f;
  }

  PresentationFile load_presentation(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str());
  }

  std::string print_presentation(Presentation const& p) {
    std::string out = "gens:";
    for (auto const& n : p.alphabet.names()) {
      out += " " + n;
    }
    out += "\nrels:";
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      out += (i == 0 ? " " : ", ") + to_string(p.alphabet, p.relators[i]);
    }
    return out + "\n";
  }

  std::string print_presentation(PresentationFile const& f) {
    std::string out = print_presentation(f.base);
    if (!f.stable) {
      return out;
    }
    out += "stable: " + *f.stable + "\n";
    if (!f.assoc.empty()) {
      out += "assoc: ";
      for (std::size_t i = 0; i < f.assoc.size(); ++i) {
        out += (i == 0 ? "" : ", ") + to_string(f.base.alphabet, f.assoc[i]);
      }
      out += "\n";
    }
    if (f.endo) {
      out += "endo: " + to_string(f.base.alphabet, *f.endo) + "\n";
    }
    if (f.truncated) {
      out += "truncated: " + std::to_string(*f.truncated) + "\n";
    }
    return out;
  }

}  // namespace cgt
