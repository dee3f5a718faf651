#pragma once

// Text formats.
//
// Topology literal (whitespace-insensitive):
//   n=3; opens={},{0},{0,1,2}
//
// Diagonal family file: a labels header, then one topology literal per label
// in header order.  Blank lines and '#' comments are skipped.
//   labels=0,0.1,0.2
//   n=2; opens={},{0},{0,1}
//   ...
//
// Fractal family fixture: node lines and link lines in any order.  Opens are
// written over carrier point names.
//   level 0: key=+; carrier=0,2; topology={},{0},{0,2}
//   parent ++ -> +: embed 0->0,2->2
//
// CSV dumps use 17-significant-digit floats.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fractopo/diagonal.hpp"
#include "fractopo/errors.hpp"
#include "fractopo/finite_topology.hpp"
#include "fractopo/fractal_family.hpp"
#include "fractopo/mean.hpp"
#include "fractopo/sign_string.hpp"

namespace fractopo {
namespace io {

namespace detail {

inline std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') out.push_back(c);
  }
  return out;
}

inline bool consume_prefix(std::string_view& text, std::string_view prefix) {
  if (text.substr(0, prefix.size()) != prefix) return false;
  text.remove_prefix(prefix.size());
  return true;
}

inline int parse_int(std::string_view text, const std::string& what) {
  if (text.empty()) throw input_error(what + ": missing integer");
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(std::string(text), &pos);
  } catch (const std::exception&) {
    throw input_error(what + ": bad integer \"" + std::string(text) + "\"");
  }
  if (pos != text.size()) {
    throw input_error(what + ": trailing characters in \"" +
                      std::string(text) + "\"");
  }
  return value;
}

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Parses "{a,b},{c},{}" into lists of integers.
inline std::vector<std::vector<int>> parse_brace_sets(std::string_view text,
                                                      const std::string& what) {
  std::vector<std::vector<int>> sets;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '{') throw input_error(what + ": expected '{'");
    const std::size_t close = text.find('}', i);
    if (close == std::string_view::npos) {
      throw input_error(what + ": unbalanced '{'");
    }
    std::vector<int> elements;
    const std::string_view inner = text.substr(i + 1, close - i - 1);
    if (!inner.empty()) {
      for (const std::string& item : split(inner, ',')) {
        elements.push_back(parse_int(item, what));
      }
    }
    sets.push_back(std::move(elements));
    i = close + 1;
    if (i < text.size()) {
      if (text[i] != ',') throw input_error(what + ": expected ',' after '}'");
      ++i;
    }
  }
  return sets;
}

}  // namespace detail

// ---- topology literals ----

inline FiniteTopology parse_topology_literal(std::string_view text) {
  std::string_view body0 = text;
  const std::string compact = detail::strip_spaces(body0);
  std::string_view body = compact;
  if (!detail::consume_prefix(body, "n=")) {
    throw input_error("topology literal must start with n=");
  }
  const std::size_t semi = body.find(';');
  if (semi == std::string_view::npos) {
    throw input_error("topology literal: missing ';' after n=");
  }
  const int n = detail::parse_int(body.substr(0, semi), "universe size");
  body.remove_prefix(semi + 1);
  if (!detail::consume_prefix(body, "opens=")) {
    throw input_error("topology literal: missing opens=");
  }
  return FiniteTopology::from_sets(n,
                                   detail::parse_brace_sets(body, "opens"));
}

inline std::string topology_to_literal(const FiniteTopology& t) {
  std::ostringstream out;
  out << "n=" << t.universe_size() << "; opens=";
  bool first = true;
  for (SubsetMask open : t.opens()) {
    if (!first) out << ',';
    out << subset_to_string(open);
    first = false;
  }
  return out.str();
}

// ---- diagonal family files ----

inline std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> lines;
  for (const std::string& raw : detail::split(text, '\n')) {
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

inline IndexedFamily parse_family_text(std::string_view text) {
  const std::vector<std::string> lines = content_lines(text);
  if (lines.empty()) throw input_error("family file is empty");
  std::string_view header = lines.front();
  const std::string compact = detail::strip_spaces(header);
  std::string_view body = compact;
  if (!detail::consume_prefix(body, "labels=")) {
    throw input_error("family file must start with labels=");
  }
  std::vector<IndexLabel> labels;
  for (const std::string& item : detail::split(body, ',')) {
    labels.push_back(IndexLabel::parse(item));
  }
  if (lines.size() - 1 != labels.size()) {
    throw input_error("family file needs one topology literal per label");
  }
  std::vector<std::pair<IndexLabel, FiniteTopology>> spaces;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    spaces.emplace_back(labels[i], parse_topology_literal(lines[i + 1]));
  }
  return IndexedFamily::make(std::move(spaces));
}

inline std::string family_to_text(const IndexedFamily& f) {
  std::ostringstream out;
  out << "labels=";
  for (int i = 0; i < f.size(); ++i) {
    if (i > 0) out << ',';
    out << f.label(i).text();
  }
  out << '\n';
  for (int i = 0; i < f.size(); ++i) {
    out << topology_to_literal(f.space(i)) << '\n';
  }
  return out.str();
}

// ---- fractal family fixtures ----

inline FractalFamilySpec parse_family_spec_text(std::string_view text) {
  std::vector<std::map<SignString, FamilyNode>> levels;
  std::map<SignString, ParentLink> links;

  for (const std::string& line : content_lines(text)) {
    const std::string compact = detail::strip_spaces(line);
    std::string_view body = compact;
    if (detail::consume_prefix(body, "level")) {
      const std::size_t colon = body.find(':');
      if (colon == std::string_view::npos) {
        throw input_error("node line: missing ':' after level");
      }
      const int level = detail::parse_int(body.substr(0, colon), "level");
      if (level < 0) throw input_error("node line: negative level");
      body.remove_prefix(colon + 1);

      SignString key;
      FamilyNode node;
      bool saw_key = false, saw_carrier = false, saw_topology = false;
      std::vector<std::vector<int>> open_names;
      for (const std::string& field : detail::split(body, ';')) {
        std::string_view f = field;
        if (detail::consume_prefix(f, "key=")) {
          key = SignString::parse(f);
          saw_key = true;
        } else if (detail::consume_prefix(f, "carrier=")) {
          for (const std::string& item : detail::split(f, ',')) {
            node.carrier.push_back(detail::parse_int(item, "carrier"));
          }
          saw_carrier = true;
        } else if (detail::consume_prefix(f, "topology=")) {
          open_names = detail::parse_brace_sets(f, "topology");
          saw_topology = true;
        } else {
          throw input_error("node line: unknown field \"" + field + "\"");
        }
      }
      if (!saw_key || !saw_carrier || !saw_topology) {
        throw input_error("node line needs key=, carrier= and topology=");
      }
      if (key.level() != level) {
        throw input_error("key " + key.text() + " does not match level " +
                          std::to_string(level));
      }
      // Opens are written over carrier names; convert to local indices.
      std::vector<SubsetMask> opens;
      for (const auto& names : open_names) {
        SubsetMask m = 0;
        for (int name : names) {
          m |= SubsetMask{1}
               << fractopo::detail::local_index(node.carrier, name);
        }
        opens.push_back(m);
      }
      node.topology = FiniteTopology::make(
          static_cast<int>(node.carrier.size()), std::move(opens));
      if (static_cast<int>(levels.size()) <= level) {
        levels.resize(static_cast<std::size_t>(level) + 1);
      }
      if (!levels[static_cast<std::size_t>(level)].emplace(key, std::move(node))
               .second) {
        throw input_error("duplicate node for key " + key.text());
      }
    } else if (detail::consume_prefix(body, "parent")) {
      const std::size_t colon = body.find(':');
      if (colon == std::string_view::npos) {
        throw input_error("link line: missing ':'");
      }
      const std::string_view head = body.substr(0, colon);
      const std::size_t gt = head.find('>');
      if (gt == std::string_view::npos || gt == 0 || head[gt - 1] != '-') {
        throw input_error("link line: missing '->'");
      }
      const SignString child = SignString::parse(head.substr(0, gt - 1));
      ParentLink link;
      link.parent = SignString::parse(head.substr(gt + 1));
      std::string_view tail = body.substr(colon + 1);
      if (!detail::consume_prefix(tail, "embed")) {
        throw input_error("link line: missing embed clause");
      }
      for (const std::string& pair : detail::split(tail, ',')) {
        const std::size_t arrow = pair.find("->");
        if (arrow == std::string::npos) {
          throw input_error("embed pair \"" + pair + "\" needs '->'");
        }
        link.embedding.emplace_back(
            detail::parse_int(pair.substr(0, arrow), "embed source"),
            detail::parse_int(pair.substr(arrow + 2), "embed target"));
      }
      if (!links.emplace(child, std::move(link)).second) {
        throw input_error("duplicate parent link for " + child.text());
      }
    } else {
      throw input_error("unrecognized line: \"" + line + "\"");
    }
  }
  return FractalFamilySpec::make(std::move(levels), std::move(links));
}

inline std::string family_spec_to_text(const FractalFamilySpec& spec) {
  std::ostringstream out;
  for (int n = 0; n <= spec.max_level(); ++n) {
    for (const auto& [key, node] : spec.level(n)) {
      out << "level " << n << ": key=" << key.text() << "; carrier=";
      for (std::size_t i = 0; i < node.carrier.size(); ++i) {
        if (i > 0) out << ',';
        out << node.carrier[i];
      }
      out << "; topology=";
      bool first = true;
      for (SubsetMask open : node.topology.opens()) {
        if (!first) out << ',';
        out << '{';
        bool inner_first = true;
        SubsetMask m = open;
        while (m) {
          const int bit = std::countr_zero(m);
          if (!inner_first) out << ',';
          out << node.carrier[static_cast<std::size_t>(bit)];
          inner_first = false;
          m &= m - 1;
        }
        out << '}';
        first = false;
      }
      out << '\n';
    }
  }
  for (const auto& [child, link] : spec.links()) {
    out << "parent " << child.text() << " -> " << link.parent.text()
        << ": embed ";
    for (std::size_t i = 0; i < link.embedding.size(); ++i) {
      if (i > 0) out << ',';
      out << link.embedding[i].first << "->" << link.embedding[i].second;
    }
    out << '\n';
  }
  return out.str();
}

// ---- CSV dumps ----

inline std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string graph_to_csv(const GraphSample& sample) {
  std::ostringstream out;
  out << "x,y\n";
  for (const auto& [x, y] : sample.points) {
    out << format_float(x) << ',' << format_float(y) << '\n';
  }
  return out.str();
}

inline std::string nset_to_csv(const NSetSample& nset) {
  std::ostringstream out;
  out << "# tags=";
  for (std::size_t i = 0; i < nset.tags.size(); ++i) {
    if (i > 0) out << ',';
    out << nset.tags[i];
  }
  out << '\n' << "x,y1,y2,y3\n";
  const auto& g = nset.graphs;
  for (std::size_t row = 0; row < g[0].points.size(); ++row) {
    out << format_float(g[0].points[row].first) << ','
        << format_float(g[0].points[row].second) << ','
        << format_float(g[1].points[row].second) << ','
        << format_float(g[2].points[row].second) << '\n';
  }
  return out.str();
}

// ---- files ----

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + path);
  out << content;
}

}  // namespace io
}  // namespace fractopo
