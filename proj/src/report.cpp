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

#include "report.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <set>

#include "muind/errors.hpp"

namespace muind {

Json to_json(const Rational& q) { return Json::array({q.get_num().get_str(), q.get_den().get_str()}); }

Json to_json(const Integer& z) { return z.get_str(); }

Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw InputError("rational must be a [numerator, denominator] pair of strings");
  Rational q(Integer(j[0].get<std::string>()), Integer(j[1].get<std::string>()));
  if (q.get_den() == 0) throw InputError("rational with zero denominator");
  q.canonicalize();
  return q;
}

Integer integer_from_json(const Json& j) {
  if (!j.is_string()) throw InputError("integer must be a decimal string");
  return Integer(j.get<std::string>());
}

Json to_json(const LevelSet& s) {
  return Json{{"explicit_levels", s.explicit_levels},
              {"residues", s.residues},
              {"period", s.period},
              {"tail", to_string(s.tail)}};
}

Json to_json(const ProductVerdict& v) {
  return Json{{"sign", to_string(v.sign)},
              {"certificate", to_string(v.certificate)},
              {"partial", to_json(v.partial)},
              {"partial_levels", v.partial_levels},
              {"lower", to_json(v.lower)},
              {"upper", to_json(v.upper)},
              {"bound_level", v.bound_level},
              {"tail_sum_bound", to_json(v.tail_sum_bound)},
              {"witness_residues", v.witness_residues},
              {"residue_period", v.residue_period},
              {"detail", v.detail}};
}

Json to_json(const LevelRow& row) {
  return Json{{"level", row.level},
              {"n", to_json(row.n)},
              {"p", row.counts.p},
              {"q", row.counts.q},
              {"r", row.counts.r},
              {"r_prime", row.counts.r_prime},
              {"ratio", to_json(row.ratio)},
              {"running", to_json(row.running)},
              {"full_product", row.full_product},
              {"orbit_over_a", to_json(row.orbit_over_a)},
              {"orbit_over_ab", to_json(row.orbit_over_ab)},
              {"enumerated", row.enumerated}};
}

Json to_json(const IndependenceVerdict& v) {
  Json rows = Json::array();
  for (const auto& r : v.rows) rows.push_back(to_json(r));
  Json tail = Json::array();
  for (const auto& k : v.slices.tail)
    tail.push_back(Json{{"p", k.p}, {"q", k.q}, {"r", k.r}, {"r_prime", k.r_prime}});
  const TailLayout& l = v.slices.layout;
  Json j{{"kind", to_string(v.kind)},
         {"verdict", to_string(v.verdict)},
         {"layout", Json{{"horizon", l.horizon}, {"period", l.period}, {"has_tail", l.has_tail}}},
         {"tail_slices", tail},
         {"rows", rows},
         {"deficiency", to_json(v.deficiency)},
         {"defect", to_json(v.defect)},
         {"detail", v.detail}};
  j["product"] = v.product ? to_json(*v.product) : Json(nullptr);
  j["stabilizes_from"] = v.stabilizes_from ? Json(*v.stabilizes_from) : Json(nullptr);
  j["failure_level"] = v.failure_level ? Json(*v.failure_level) : Json(nullptr);
  return j;
}

Json report_header(const std::string& command) {
  return Json{{"schema", kReportSchema}, {"version", kVersion}, {"command", command}};
}

namespace {

// Everything below recomputes from the certificate fields only.

struct Problems {
  std::vector<std::string> list;
  void expect(bool ok, const std::string& what) {
    if (!ok) list.push_back(what);
  }
};

Integer descending_product(const Integer& top, std::uint64_t count) {
  Integer out = 1;
  for (std::uint64_t k = 0; k < count; ++k) out *= top - k;
  return out;
}

std::string at(std::size_t level) { return "level " + std::to_string(level) + ": "; }

void check_level_set(Problems& pr, const Json& set, const Json& rows, const Json& tail_slices,
                     std::size_t horizon, bool has_tail, const std::string& name,
                     const std::function<bool(const Json&)>& bad) {
  std::set<std::size_t> listed;
  for (const auto& x : set["explicit_levels"]) listed.insert(x.get<std::size_t>());
  std::set<std::size_t> residues;
  for (const auto& x : set["residues"]) residues.insert(x.get<std::size_t>());
  std::size_t period = set["period"].get<std::size_t>();
  std::string tail = set["tail"].get<std::string>();
  pr.expect(period >= 1, name + ": period must be positive");
  if (period == 0) return;
  for (const auto& row : rows) {
    std::size_t level = row["level"].get<std::size_t>();
    bool is_bad = bad(row);
    if (!has_tail || level < horizon) {
      pr.expect(is_bad == (listed.count(level) > 0), at(level) + name + " membership disagrees with the row");
    } else {
      pr.expect(is_bad == (residues.count(level % period) > 0),
                at(level) + name + " residue class disagrees with the row");
      std::size_t rho = level % period;
      if (rho < tail_slices.size()) {
        const Json& k = tail_slices[rho];
        pr.expect(k["p"] == row["p"] && k["q"] == row["q"] && k["r"] == row["r"] && k["r_prime"] == row["r_prime"],
                  at(level) + "row counts differ from the tail slice of its residue class");
      }
    }
  }
  if (!has_tail) {
    pr.expect(tail == "unknown", name + ": a finite table must leave the tail unknown");
  } else if (residues.empty()) {
    pr.expect(tail == "empty", name + ": tail must be empty when no residue is listed");
  } else {
    pr.expect(tail == "full" || tail == "periodic-residues", name + ": tail must be infinite when residues are listed");
  }
}

void check_product_indep(Problems& pr, const Json& c, const std::string& verdict) {
  const Json& rows = c["rows"];
  Rational running = 1;
  for (const auto& row : rows) {
    std::size_t level = row["level"].get<std::size_t>();
    Integer n = integer_from_json(row["n"]);
    auto p = row["p"].get<std::uint64_t>(), q = row["q"].get<std::uint64_t>();
    auto r = row["r"].get<std::uint64_t>(), rp = row["r_prime"].get<std::uint64_t>();
    if (!(p + q + rp <= n && p + r <= n && rp <= r)) {
      pr.expect(false, at(level) + "slice counts do not fit into the level");
      continue;
    }
    Rational ratio(descending_product(n - p - q, rp), descending_product(n - p, r));
    ratio.canonicalize();
    Rational stated = rational_from_json(row["ratio"]);
    pr.expect(stated == ratio, at(level) + "ratio " + to_string(stated) + " should be " + to_string(ratio));
    running *= ratio;
    pr.expect(rational_from_json(row["running"]) == running, at(level) + "running product is inconsistent");
    pr.expect(row["full_product"].get<bool>() == (ratio == 1), at(level) + "full-product flag disagrees with the ratio");
    pr.expect(integer_from_json(row["orbit_over_a"]) == descending_product(n - p, r), at(level) + "orbit over A is wrong");
    pr.expect(integer_from_json(row["orbit_over_ab"]) == descending_product(n - p - q, rp),
              at(level) + "orbit over AB is wrong");
  }
  std::size_t horizon = c["layout"]["horizon"].get<std::size_t>();
  bool has_tail = c["layout"]["has_tail"].get<bool>();
  const Json& tail = c["tail_slices"];
  auto deficient = [](const Json& row) { return row["r_prime"].get<std::uint64_t>() < row["r"].get<std::uint64_t>(); };
  check_level_set(pr, c["deficiency"], rows, tail, horizon, has_tail, "deficiency set", deficient);
  std::string kind = c["kind"].get<std::string>();
  pr.expect(c["verdict"] == verdict, "certificate verdict differs from the report verdict");
  if (kind == "mu") {
    pr.expect(c["product"].is_object(), "mu certificate needs the infinite product verdict");
    if (!c["product"].is_object()) return;
    const Json& pv = c["product"];
    std::string sign = pv["sign"].get<std::string>(), cert = pv["certificate"].get<std::string>();
    Rational lower = rational_from_json(pv["lower"]), upper = rational_from_json(pv["upper"]);
    pr.expect(lower <= upper, "product bounds are out of order");
    bool deficiency_infinite = c["deficiency"]["tail"] == "full" || c["deficiency"]["tail"] == "periodic-residues";
    if (sign == "positive") {
      pr.expect(verdict == "independent", "positive product must give independence");
      pr.expect(lower > 0 && upper <= 1, "positive product needs 0 < lower <= upper <= 1");
      pr.expect(!deficiency_infinite, "positive product with an infinite deficiency set");
      std::size_t bl = pv["bound_level"].get<std::size_t>();
      if (bl >= 1 && bl <= rows.size())
        pr.expect(rational_from_json(rows[bl - 1]["running"]) == upper, "upper bound is not the exact partial product");
      if (cert == "comparison-sum-converges") {
        Rational s = rational_from_json(pv["tail_sum_bound"]);
        pr.expect(s >= 0 && s < 1 && lower == upper * (1 - s), "lower bound is not upper (1 - tail sum bound)");
      }
    } else if (sign == "zero") {
      pr.expect(verdict == "dependent", "vanishing product must give dependence");
      pr.expect(cert == "zero-factor" || cert == "deficiency-set-infinite" || cert == "comparison-sum-diverges",
                "vanishing product needs a divergence certificate");
      if (cert == "deficiency-set-infinite") pr.expect(deficiency_infinite, "deficiency set is not infinite");
      pr.expect(lower == 0, "vanishing product must have lower bound 0");
    } else {
      pr.expect(verdict == "unknown", "undecided product must give an unknown verdict");
    }
  } else {
    auto defect = kind == "nm" ? std::function<bool(const Json&)>([](const Json& row) { return !row["full_product"].get<bool>(); })
                               : std::function<bool(const Json&)>([](const Json& row) {
                                   return row["orbit_over_a"] != row["orbit_over_ab"];
                                 });
    check_level_set(pr, c["defect"], rows, tail, horizon, has_tail, "defect set", defect);
    bool empty = c["defect"]["residues"].empty();
    std::string expected = !has_tail ? "unknown" : empty ? "independent" : "dependent";
    pr.expect(verdict == expected, "verdict should be " + expected + " given the defect set");
    if (c["stabilizes_from"].is_number())
      for (const auto& x : c["defect"]["explicit_levels"])
        pr.expect(x.get<std::size_t>() < c["stabilizes_from"].get<std::size_t>(), "defect level past the stabilization point");
  }
}

void check_branch_verdict(Problems& pr, const Json& c) {
  std::string mu = c["mu"].get<std::string>();
  if (mu == "independent" && c["open_witness"].is_number()) {
    Integer idx = integer_from_json(c["witness_index"]);
    pr.expect(idx >= 1, "witness index must be positive");
    if (idx >= 1) pr.expect(rational_from_json(c["measure_lower"]) == Rational(1, 1) / Rational(idx),
                            "measure lower bound must be 1 / witness index");
    if (c["separation"].is_number())
      pr.expect(c["open_witness"] == c["separation"], "open witness must sit at the separation level");
  }
  if (mu == "dependent") {
    const Json& seq = c["index_sequence"];
    pr.expect(seq.size() >= 2, "dependence needs a growing index sequence");
    bool grows = false;
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (integer_from_json(seq[i]) > integer_from_json(seq[i - 1])) grows = true;
    pr.expect(grows, "index sequence never grows");
  }
  if (c["nm"] == "independent") pr.expect(c["orbit_open_from"].is_number(), "nm independence needs a cylinder level");
  if (c["acl_member"].get<bool>() && c["index_sequence"].empty()) pr.expect(mu == "independent", "a in A must be independent");
}

void check_partition(Problems& pr, const Json& orbits, std::uint64_t lo, std::uint64_t count, const std::string& what) {
  std::vector<std::uint64_t> all;
  for (const auto& o : orbits) {
    pr.expect(!o.empty(), what + ": empty orbit");
    for (const auto& x : o) all.push_back(x.get<std::uint64_t>());
  }
  std::sort(all.begin(), all.end());
  bool ok = all.size() == count;
  for (std::size_t i = 0; ok && i < all.size(); ++i) ok = all[i] == lo + i;
  pr.expect(ok, what + ": orbits do not partition the vertices");
}

// Arity description "k" or "[a b] then (c d) repeated" back into a function.
std::optional<std::function<unsigned(std::size_t)>> arity_from(const std::string& text) {
  auto nums = [](const std::string& s) {
    std::vector<unsigned> out;
    std::string cur;
    for (char ch : s + " ") {
      if (std::isdigit(static_cast<unsigned char>(ch))) cur += ch;
      else if (!cur.empty()) out.push_back(static_cast<unsigned>(std::stoul(cur))), cur.clear();
    }
    return out;
  };
  std::vector<unsigned> prefix, cycle;
  auto lb = text.find('['), rb = text.find(']'), lp = text.find('('), rp = text.find(')');
  if (lp != std::string::npos && rp != std::string::npos) {
    cycle = nums(text.substr(lp, rp - lp));
    if (lb != std::string::npos && rb != std::string::npos) prefix = nums(text.substr(lb, rb - lb));
  } else {
    cycle = nums(text);
    if (cycle.size() != 1) return std::nullopt;
  }
  if (cycle.empty()) return std::nullopt;
  return [prefix, cycle](std::size_t l) {
    return l < prefix.size() ? prefix[l] : cycle[(l - prefix.size()) % cycle.size()];
  };
}

void check_branch(Problems& pr, const Json& r) {
  const Json& c = r["certificate"];
  std::string sub = r["query"]["sub"].get<std::string>();
  std::string kind = r["structure"]["kind"].get<std::string>();
  auto alpha = arity_from(c["arity"].get<std::string>());
  std::size_t depth = c["depth"].get<std::size_t>();
  auto level_size = [&](std::size_t l) {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < l; ++i) s *= (*alpha)(i);
    return s;
  };
  // |Aut(T_d)| restricted to levels >= from.
  auto full_order = [&](std::size_t from) {
    Integer out = 1;
    for (std::size_t l = from; l < depth; ++l) {
      Integer f = factorial((*alpha)(l));
      for (std::uint64_t i = 0; i < level_size(l); ++i) out *= f;
    }
    return out;
  };
  pr.expect(alpha.has_value(), "arity description is unreadable");
  if (!alpha) return;
  if (sub == "verify") {
    Integer order = integer_from_json(c["order"]);
    const Json& ro = c["rist_order"];
    const Json& ri = c["rist_index"];
    pr.expect(ro.size() == depth + 1 && ri.size() == depth + 1 && c["transitive"].size() == depth,
              "per-level lists have the wrong length");
    for (std::size_t n = 0; n < ro.size() && n < ri.size(); ++n)
      pr.expect(integer_from_json(ro[n]) * integer_from_json(ri[n]) == order,
                "rist(" + std::to_string(n) + "): order times index is not the group order");
    if (kind == "tree-full-aut") {
      pr.expect(order == full_order(0), "order of the full automorphism group is wrong");
      for (std::size_t n = 0; n < ro.size(); ++n) {
        Integer expect = 1;
        for (std::size_t l = n; l < depth; ++l) {
          Integer f = factorial((*alpha)(l));
          for (std::uint64_t i = 0; i < level_size(l); ++i) expect *= f;
        }
        pr.expect(integer_from_json(ro[n]) == expect, "rist(" + std::to_string(n) + ") order is wrong");
      }
      for (const auto& t : c["transitive"]) pr.expect(t.get<bool>(), "the full group is transitive on every level");
    }
    bool all = std::all_of(c["transitive"].begin(), c["transitive"].end(), [](const Json& b) { return b.get<bool>(); });
    pr.expect(c["all_transitive"].get<bool>() == all, "all-transitive flag is inconsistent");
  } else if (sub == "orbits") {
    std::size_t vl = c["vertex"]["level"].get<std::size_t>(), level = c["level"].get<std::size_t>();
    std::uint64_t vi = c["vertex"]["index"].get<std::uint64_t>();
    std::uint64_t st = level_size(level) / level_size(vl);
    check_partition(pr, c["orbits"], vi * st, st, "rist orbits");
    if (c["previous_count"].is_number())
      pr.expect(c["stabilized"].get<bool>() == (c["previous_count"].get<std::size_t>() == c["orbits"].size()),
                "stabilized flag is inconsistent");
  } else if (sub == "smallness") {
    std::size_t level = c["level"].get<std::size_t>();
    check_partition(pr, c["orbits"], 0, level_size(level), "smallness orbits");
    std::size_t predicted = c["ray_vertices"].get<std::size_t>();
    for (const auto& o : c["omega"]) predicted += o["orbit_count"].get<std::size_t>();
    pr.expect(predicted == c["predicted"].get<std::size_t>(), "omega prediction does not add up");
    pr.expect(c["matches_prediction"].get<bool>() == (predicted == c["orbits"].size()), "match flag is inconsistent");
    const Json& counts = c["counts_by_level"];
    pr.expect(counts.size() == level && counts.back() == c["orbits"].size(), "orbit counts by level are inconsistent");
    bool envelope = true;
    for (std::size_t j = 0; j < counts.size(); ++j)
      envelope = envelope && counts[j].get<std::size_t>() <= 1 + (j + 1) * c["rays"].get<std::size_t>() * c["max_arity"].get<std::size_t>();
    pr.expect(envelope == c["linear_envelope"].get<bool>(), "linear envelope flag is inconsistent");
    if (kind == "tree-full-aut") {
      // Each omega vertex at level j carries the full subtree group: one orbit.
      for (const auto& o : c["omega"]) pr.expect(o["orbit_count"] == 1, "full subtree group must be transitive below an omega vertex");
    }
  } else if (sub == "mu-checks") {
    check_branch_verdict(pr, c["verdict"]);
    const Json& idx = c["stabilizer_indices"];
    bool inc = true;
    for (std::size_t i = 1; i < idx.size(); ++i) inc = inc && integer_from_json(idx[i]) > integer_from_json(idx[i - 1]);
    pr.expect(inc == c["strictly_increasing"].get<bool>(), "strictly-increasing flag is inconsistent");
    pr.expect(c["acl_member"].get<bool>() == (c["verdict"]["mu"] == "dependent"), "acl membership must match dependence");
    pr.expect(r["verdict"] == c["verdict"]["mu"], "report verdict differs from the certificate");
  } else if (sub == "rist" || sub == "rist-level") {
    if (kind == "tree-full-aut") {
      Integer expect;
      if (sub == "rist-level") {
        expect = full_order(c["level"].get<std::size_t>());
      } else {
        std::size_t vl = c["vertex"]["level"].get<std::size_t>();
        expect = 1;
        for (std::size_t l = vl; l < depth; ++l) {
          Integer f = factorial((*alpha)(l));
          for (std::uint64_t i = 0; i < level_size(l) / level_size(vl); ++i) expect *= f;
        }
      }
      pr.expect(integer_from_json(c["order"]) == expect, "rigid stabilizer order is wrong");
      pr.expect(integer_from_json(c["order"]) * integer_from_json(c["index"]) == full_order(0), "order times index is wrong");
    }
  } else {
    pr.expect(false, "unknown branch subcommand '" + sub + "'");
  }
}

void check_rank(Problems& pr, const Json& r) {
  const Json& k = r["rank"];
  std::string kind = k["kind"].get<std::string>();
  std::size_t value = k["value"].get<std::size_t>(), bound = k["bound"].get<std::size_t>();
  const Json& chain = k["chain"];
  if (kind == "infinite-witnessed") {
    pr.expect(chain.size() == value + 1, "witness chain length differs from the value");
    pr.expect(k["steps"].size() == value, "witness chain needs one certificate per step");
    for (const auto& s : k["steps"])
      pr.expect(s.get<std::string>().rfind("dependent", 0) == 0, "witness step is not dependent");
  } else if (kind != "unknown") {
    pr.expect(chain.size() == value + 1, "chain length differs from the rank value");
    pr.expect((kind == "at-least") == (value == bound), "at-least must coincide with reaching the bound");
  }
  std::set<std::string> pool;
  for (const auto& p : k["pool"]) pool.insert(p.get<std::string>());
  for (std::size_t i = 1; i < chain.size(); ++i) {
    std::set<std::string> prev, cur;
    for (const auto& p : chain[i - 1]) prev.insert(p.get<std::string>());
    for (const auto& p : chain[i]) cur.insert(p.get<std::string>());
    pr.expect(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()) && cur.size() > prev.size(),
              "chain step " + std::to_string(i) + " is not a proper extension");
    for (const auto& p : cur)
      if (!prev.count(p)) pr.expect(pool.count(p) > 0, "chain point " + p + " is not in the pool");
  }
  pr.expect(r["verdict"] == (kind == "exact"       ? std::to_string(value)
                             : kind == "at-least" ? "at-least(" + std::to_string(value) + ")"
                             : kind == "unknown"  ? std::string("unknown")
                                                  : "infinite-witnessed(" + std::to_string(value) + ")"),
            "report verdict differs from the rank");
}

void check_counterexample(Problems& pr, const Json& r) {
  const Json& c = r["certificate"];
  Rational running = 1;
  bool proper = true;
  for (const auto& row : c["rows"]) {
    std::size_t level = row["level"].get<std::size_t>();
    Integer n = integer_from_json(row["n"]);
    Rational x = rational_from_json(row["x"]);
    Rational expect_x = 1 - Rational(1, 1) / Rational(Integer(1) << (level + 2));
    pr.expect(x == expect_x, at(level) + "x_i is not 1 - 2^-(i+2)");
    if (!c["overridden"].get<bool>())
      pr.expect(n == Integer(1) << (level + 2), at(level) + "n_i is not 2^(i+2)");
    Rational ratio = rational_from_json(row["ratio"]);
    Rational law(n - 1, n);
    law.canonicalize();
    pr.expect(ratio == law, at(level) + "ratio is not (n-1)/n");
    if (!c["overridden"].get<bool>()) pr.expect(ratio >= x, at(level) + "ratio falls below x_i");
    running *= ratio;
    pr.expect(rational_from_json(row["running"]) == running, at(level) + "running product is inconsistent");
    pr.expect(row["proper"].get<bool>() == (ratio < 1), at(level) + "properness flag is inconsistent");
    proper = proper && row["proper"].get<bool>();
    if (row["size_bound"].is_string()) {
      Integer bound = factorial(n.get_ui() - 1) * (n - 1);
      pr.expect(integer_from_json(row["size_bound"]) == bound, at(level) + "size bound is not (n-1)!(n-1)");
      if (row["product_size"].is_number())
        pr.expect(Integer(row["product_size"].get<std::uint64_t>()) >= bound, at(level) + "|H1H2| is below the bound");
    }
  }
  pr.expect(rational_from_json(c["running"]) == running, "final running product is inconsistent");
  pr.expect(c["exceeds_half"].get<bool>() == (running > Rational(1, 2)), "exceeds-half flag is inconsistent");
  pr.expect(c["all_proper"].get<bool>() == proper, "all-proper flag is inconsistent");
  pr.expect(r["verdict"] == (running > Rational(1, 2) ? "exceeds-half" : "at-most-half"), "verdict is inconsistent");
  if (c["mu"].is_object()) check_product_indep(pr, c["mu"], c["mu"]["verdict"].get<std::string>());
  if (c["nm"].is_object()) check_product_indep(pr, c["nm"], c["nm"]["verdict"].get<std::string>());
}

}  // namespace

std::vector<std::string> check_report(const Json& r) {
  Problems pr;
  try {
    pr.expect(r.is_object(), "report must be a JSON object");
    if (!r.is_object()) return pr.list;
    pr.expect(r.value("schema", "") == kReportSchema, "unknown report schema");
    std::string command = r.value("command", "");
    std::string verdict = r.contains("verdict") && r["verdict"].is_string() ? r["verdict"].get<std::string>() : "";
    if (command == "indep") {
      const Json& c = r["certificate"];
      if (c.contains("undecidable")) {
        pr.expect(verdict == "unknown", "undecidable queries must report unknown");
        return pr.list;
      }
      std::string kind = r["structure"]["kind"].get<std::string>();
      if (kind == "product-symmetric") {
        pr.expect(c["kind"] == r["query"]["kind"], "certificate kind differs from the query");
        check_product_indep(pr, c, verdict);
      } else if (kind == "finite-perm") {
        Rational m = rational_from_json(c["measure"]);
        Rational expect(Integer(c["product_size"].get<std::uint64_t>()), Integer(c["base_order"].get<std::uint64_t>()));
        expect.canonicalize();
        pr.expect(m == expect, "measure is not |G_AB G_Aa| / |G_A|");
        pr.expect(c["orbit_over_ab"].get<std::size_t>() <= c["orbit_over_a"].get<std::size_t>(), "orbit over AB exceeds orbit over A");
        pr.expect(verdict == (m > 0 ? "independent" : "dependent"), "verdict disagrees with the measure");
      } else {
        check_branch_verdict(pr, c);
        std::string q = r["query"]["kind"].get<std::string>();
        pr.expect(verdict == c[q == "mu" ? "mu" : "nm"].get<std::string>(), "verdict differs from the certificate");
      }
    } else if (command == "counterexample") {
      check_counterexample(pr, r);
    } else if (command == "branch") {
      if (r["certificate"].contains("undecidable"))
        pr.expect(verdict == "unknown", "undecidable queries must report unknown");
      else
        check_branch(pr, r);
    } else if (command == "rank") {
      if (r.contains("certificate") && r["certificate"].contains("undecidable"))
        pr.expect(verdict == "unknown", "undecidable queries must report unknown");
      else
        check_rank(pr, r);
    } else if (command == "accept") {
      if (r.contains("results")) {
        bool all = true;
        for (const auto& x : r["results"]) all = all && x["passed"].get<bool>() && x["within_budget"].get<bool>();
        pr.expect(verdict == (all ? "pass" : "fail"), "summary verdict disagrees with the criteria");
      }
    } else if (command == "check-report") {
      pr.expect(verdict == (r["problems"].empty() ? "valid" : "invalid"), "check verdict disagrees with its problems");
    } else {
      pr.expect(false, "unknown command '" + command + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    pr.list.push_back(std::string("malformed report: ") + e.what());
  } catch (const Error& e) {
    pr.list.push_back(std::string("malformed report: ") + e.what());
  }
  return pr.list;
}

}  // namespace muind
