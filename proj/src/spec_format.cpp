// Copyright 2026 The muind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "muind/spec_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "muind/errors.hpp"

namespace muind {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::uint64_t to_u64(std::string_view s, const std::string& what) {
  if (!all_digits(s) || s.size() > 18) throw InputError(what + ": expected a non-negative integer, got '" + std::string(s) + "'");
  return std::stoull(std::string(s));
}

Integer to_big(std::string_view s, const std::string& what) {
  if (!all_digits(s)) throw InputError(what + ": expected a non-negative integer, got '" + std::string(s) + "'");
  return Integer(std::string(s));
}

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

// Splits on whitespace outside parentheses.
std::vector<std::string> split_top(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw InputError("unbalanced parentheses in '" + std::string(text) + "'");
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<std::vector<std::string>> cycle_body(std::string_view t) {
  if (t.size() < 7 || t.substr(0, 6) != "cycle(" || t.back() != ')') return std::nullopt;
  auto parts = split_on(t.substr(6, t.size() - 7), ',');
  for (const auto& p : parts)
    if (p.empty()) throw InputError("empty entry in '" + std::string(t) + "'");
  return parts;
}

SymVal parse_symval(std::string_view t) {
  if (t == "first") return SymVal::constant(1);
  if (t == "last") return SymVal::last();
  if (!t.empty() && t[0] == 'k') return SymVal::constant(to_u64(t.substr(1), "tail constant"));
  if (all_digits(t)) return SymVal::constant(to_u64(t, "tail constant"));
  throw InputError("unknown tail value '" + std::string(t) + "'");
}

TailSelector parse_tail(std::string_view t) {
  if (t == "none") return TailSelector::none();
  if (auto body = cycle_body(t)) {
    std::vector<SymVal> values;
    for (const auto& v : *body) values.push_back(parse_symval(v));
    return TailSelector::cycle(std::move(values));
  }
  return TailSelector::cycle({parse_symval(t)});
}

struct Field {
  std::string value;
  std::size_t line = 0;
};

}  // namespace

std::vector<std::string> split_words(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

ProductPoint parse_product_point(std::string_view text) {
  std::string t = trim(text);
  if (t.empty()) throw InputError("empty point");
  ProductPoint p;
  std::string coords, tail;
  if (auto semi = t.find(';'); semi != std::string::npos) {
    coords = trim(t.substr(0, semi));
    tail = trim(t.substr(semi + 1));
    if (coords.empty()) throw InputError("point '" + t + "' has an empty coordinate list");
  } else if (std::isdigit(static_cast<unsigned char>(t[0]))) {
    coords = t;
    tail = "none";
  } else {
    tail = t;
  }
  if (!coords.empty())
    for (const auto& c : split_on(coords, ',')) {
      Integer v = to_big(c, "coordinate of '" + t + "'");
      if (v < 1) throw InputError("coordinates start at 1 in '" + t + "'");
      p.coords.push_back(v);
    }
  p.tail = parse_tail(tail);
  return p;
}

std::vector<ProductPoint> parse_product_points(std::string_view text) {
  std::vector<ProductPoint> out;
  for (const auto& w : split_top(text)) out.push_back(parse_product_point(w));
  return out;
}

BoundaryPoint parse_boundary_point(std::string_view text) {
  std::string t = trim(text);
  if (t.empty()) throw InputError("empty ray");
  BoundaryPoint p;
  std::string path, tail;
  if (auto semi = t.find(';'); semi != std::string::npos) {
    path = trim(t.substr(0, semi));
    tail = trim(t.substr(semi + 1));
    if (path.empty()) throw InputError("ray '" + t + "' has an empty path");
  } else if (std::isdigit(static_cast<unsigned char>(t[0]))) {
    path = t;
    tail = "none";
  } else {
    tail = t;
  }
  if (!path.empty())
    for (const auto& c : split_on(path, '.')) p.path.push_back(static_cast<unsigned>(to_u64(c, "child index of '" + t + "'")));
  if (tail == "left") {
    p.tail = BoundaryPoint::Tail::kLeft;
  } else if (tail == "right") {
    p.tail = BoundaryPoint::Tail::kRight;
  } else if (tail == "none") {
    p.tail = BoundaryPoint::Tail::kNone;
  } else if (auto body = cycle_body(tail)) {
    p.tail = BoundaryPoint::Tail::kCycle;
    for (const auto& c : *body) p.cycle.push_back(static_cast<unsigned>(to_u64(c, "cycle entry of '" + t + "'")));
  } else {
    throw InputError("unknown ray tail '" + tail + "'");
  }
  return p;
}

std::vector<BoundaryPoint> parse_boundary_points(std::string_view text) {
  std::vector<BoundaryPoint> out;
  for (const auto& w : split_top(text)) out.push_back(parse_boundary_point(w));
  return out;
}

Tuple parse_finite_points(const FiniteAction& action, std::string_view text) {
  auto words = split_words(text);
  return action.resolve(words);
}

std::string to_string(StructureSpec::Kind kind) {
  switch (kind) {
    case StructureSpec::Kind::kFinitePerm: return "finite-perm";
    case StructureSpec::Kind::kProductSymmetric: return "product-symmetric";
    case StructureSpec::Kind::kTreeFullAut: return "tree-full-aut";
    case StructureSpec::Kind::kTreeRecursion: return "tree-recursion";
  }
  return "unknown";
}

std::string StructureSpec::describe() const {
  switch (kind) {
    case Kind::kFinitePerm:
      return "finite permutation group of order " + std::to_string(action->order()) + " on " +
             std::to_string(action->degree()) + " points";
    case Kind::kProductSymmetric: return "product of symmetric groups, " + product->sizes().describe();
    default: return tree->describe();
  }
}

StructureSpec parse_spec(std::string_view text, std::optional<std::size_t> depth_override) {
  std::map<std::string, Field> fields;
  std::vector<std::pair<std::string, Field>> gens;
  std::size_t line_no = 0, last_line = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    last_line = line_no;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "", "expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "", "missing key");
    if (key.rfind("gen ", 0) == 0) {
      std::string name = trim(key.substr(4));
      if (name.empty() || name.find_first_of(" \t") != std::string::npos)
        throw ParseError(line_no, key, "generator names are single words");
      gens.push_back({name, Field{value, line_no}});
      continue;
    }
    if (fields.count(key)) throw ParseError(line_no, key, "field given twice");
    fields[key] = Field{value, line_no};
  }

  // Line 0 marks a value supplied outside the file.
  if (depth_override) fields["depth"] = Field{std::to_string(*depth_override), 0};

  std::set<std::string> used;
  auto get = [&](const std::string& key) -> const Field* {
    used.insert(key);
    auto it = fields.find(key);
    return it == fields.end() ? nullptr : &it->second;
  };
  auto need = [&](const std::string& key) -> const Field& {
    const Field* f = get(key);
    if (!f) throw ParseError(last_line, key, "required field is missing");
    return *f;
  };
  auto guard = [&](const Field& f, const std::string& key, auto&& fn) {
    try {
      return fn();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(f.line, key, e.what());
    }
  };
  auto u64 = [&](const std::string& key, std::optional<std::uint64_t> fallback) -> std::uint64_t {
    const Field* f = get(key);
    if (!f) {
      if (!fallback) throw ParseError(last_line, key, "required field is missing");
      return *fallback;
    }
    return guard(*f, key, [&] { return to_u64(f->value, "value"); });
  };
  auto big_list = [&](const Field& f, const std::string& key) {
    return guard(f, key, [&] {
      std::vector<Integer> out;
      for (const auto& w : split_words(f.value)) out.push_back(to_big(w, "value"));
      if (out.empty()) throw InputError("expected at least one value");
      return out;
    });
  };
  auto small_list = [&](const Field& f, const std::string& key) {
    return guard(f, key, [&] {
      std::vector<unsigned> out;
      for (const auto& w : split_words(f.value)) out.push_back(static_cast<unsigned>(to_u64(w, "value")));
      if (out.empty()) throw InputError("expected at least one value");
      return out;
    });
  };

  StructureSpec spec;
  spec.text = std::string(text);
  const Field& kind = need("kind");
  if (kind.value == "finite-perm") spec.kind = StructureSpec::Kind::kFinitePerm;
  else if (kind.value == "product-symmetric") spec.kind = StructureSpec::Kind::kProductSymmetric;
  else if (kind.value == "tree-full-aut") spec.kind = StructureSpec::Kind::kTreeFullAut;
  else if (kind.value == "tree-recursion") spec.kind = StructureSpec::Kind::kTreeRecursion;
  else throw ParseError(kind.line, "kind", "unknown kind '" + kind.value + "'");

  if (!gens.empty() && spec.kind != StructureSpec::Kind::kFinitePerm &&
      spec.kind != StructureSpec::Kind::kTreeRecursion)
    throw ParseError(gens.front().second.line, "gen " + gens.front().first, "generators are not used by this kind");

  switch (spec.kind) {
    case StructureSpec::Kind::kFinitePerm: {
      const Field& pts = need("points");
      auto labels = split_words(pts.value);
      if (labels.empty()) throw ParseError(pts.line, "points", "expected at least one point");
      std::map<std::string, Point> index;
      for (const auto& l : labels)
        if (!index.emplace(l, static_cast<Point>(index.size())).second)
          throw ParseError(pts.line, "points", "point '" + l + "' listed twice");
      std::uint64_t cap = u64("cap", FiniteAction::kDefaultCap);
      std::vector<Perm> perms;
      std::set<std::string> names;
      for (const auto& [name, f] : gens) {
        if (!names.insert(name).second) throw ParseError(f.line, "gen " + name, "generator defined twice");
        perms.push_back(guard(f, "gen " + name, [&] {
          std::vector<std::vector<Point>> cycles;
          std::string body = f.value;
          std::size_t i = 0;
          while (i < body.size()) {
            if (std::isspace(static_cast<unsigned char>(body[i]))) {
              ++i;
              continue;
            }
            if (body[i] != '(') throw InputError("expected '(' in cycle notation");
            auto close = body.find(')', i);
            if (close == std::string::npos) throw InputError("unclosed cycle");
            std::string inner = body.substr(i + 1, close - i - 1);
            std::replace(inner.begin(), inner.end(), ',', ' ');
            std::vector<Point> cyc;
            for (const auto& w : split_words(inner)) {
              auto it = index.find(w);
              if (it == index.end()) throw InputError("unknown point '" + w + "'");
              cyc.push_back(it->second);
            }
            cycles.push_back(std::move(cyc));
            i = close + 1;
          }
          return Perm::from_cycles(labels.size(), cycles);
        }));
      }
      spec.action = guard(pts, "points", [&] {
        return std::make_shared<const FiniteAction>(labels, perms, cap);
      });
      break;
    }
    case StructureSpec::Kind::kProductSymmetric: {
      const Field& growth = need("growth");
      std::optional<LevelSizes> sizes;
      if (growth.value == "geometric") {
        auto base = u64("base", std::nullopt), shift = u64("shift", 1);
        sizes = guard(growth, "growth", [&] { return LevelSizes::geometric(static_cast<unsigned>(base), static_cast<unsigned>(shift)); });
      } else if (growth.value == "linear") {
        const Field& slope = need("slope");
        const Field& offset = need("offset");
        Integer sl = guard(slope, "slope", [&] { return to_big(slope.value, "value"); });
        Integer of = guard(offset, "offset", [&] { return to_big(offset.value, "value"); });
        sizes = guard(growth, "growth", [&] { return LevelSizes::linear(sl, of); });
      } else if (growth.value == "periodic" || growth.value == "table") {
        const Field& values = need("values");
        auto v = big_list(values, "values");
        sizes = guard(values, "values", [&] {
          return growth.value == "periodic" ? LevelSizes::periodic(v) : LevelSizes::table(v);
        });
      } else {
        throw ParseError(growth.line, "growth", "unknown growth rule '" + growth.value + "'");
      }
      if (const Field* prefix = get("prefix")) {
        auto v = big_list(*prefix, "prefix");
        for (std::size_t i = 0; i < v.size(); ++i) {
          auto n = sizes->at(i);
          if (!n || *n != v[i])
            throw ParseError(prefix->line, "prefix", "level " + std::to_string(i) + " size " + v[i].get_str() +
                                                         " disagrees with the growth rule");
        }
      }
      auto depth = u64("depth", ProductStructure::kDefaultReportDepth);
      if (depth == 0 || depth > 4096) throw ParseError(get("depth")->line, "depth", "report depth must lie in [1, 4096]");
      spec.product = std::make_shared<const ProductStructure>(*sizes, depth);
      break;
    }
    case StructureSpec::Kind::kTreeFullAut: {
      const Field& ar = need("arity");
      auto cycle = small_list(ar, "arity");
      std::vector<unsigned> prefix;
      if (const Field* p = get("arity-prefix")) prefix = small_list(*p, "arity-prefix");
      auto depth = u64("depth", std::nullopt);
      spec.tree = guard(ar, "arity", [&] {
        return std::make_shared<const TruncatedTreeGroup>(
            TruncatedTreeGroup::full_automorphisms(Arity(prefix, cycle), depth));
      });
      break;
    }
    case StructureSpec::Kind::kTreeRecursion: {
      const Field& ar = need("arity");
      auto arity = guard(ar, "arity", [&] { return to_u64(ar.value, "arity"); });
      if (arity < 2 || arity > 64) throw ParseError(ar.line, "arity", "arity must lie in [2, 64]");
      auto depth = u64("depth", std::nullopt);
      auto cap = u64("cap", FiniteAction::kDefaultCap);
      std::vector<RecursionGenerator> rec;
      for (const auto& [name, f] : gens) {
        auto bar = f.value.find('|');
        if (bar == std::string::npos)
          throw ParseError(f.line, "gen " + name, "expected 'root images | sections'");
        RecursionGenerator g;
        g.name = name;
        g.root = guard(f, "gen " + name, [&] {
          std::vector<unsigned> out;
          for (const auto& w : split_words(f.value.substr(0, bar))) out.push_back(static_cast<unsigned>(to_u64(w, "root image")));
          return out;
        });
        g.sections = split_words(f.value.substr(bar + 1));
        rec.push_back(std::move(g));
      }
      if (rec.empty()) throw ParseError(last_line, "gen", "at least one generator is required");
      spec.tree = guard(ar, "gen", [&] {
        return std::make_shared<const TruncatedTreeGroup>(
            TruncatedTreeGroup::from_recursion(static_cast<unsigned>(arity), depth, rec, cap));
      });
      break;
    }
  }
  for (const auto& [key, f] : fields)
    if (!used.count(key)) throw ParseError(f.line, key, "field is not used by kind '" + kind.value + "'");
  return spec;
}

StructureSpec load_spec(const std::string& path, std::optional<std::size_t> depth_override) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), depth_override);
}

}  // namespace muind
