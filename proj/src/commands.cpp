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

#include "commands.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "muind/acceptance.hpp"
#include "muind/errors.hpp"
#include "muind/rank.hpp"

namespace muind {

namespace {

Status status_of(Verdict v) { return v == Verdict::kUnknown ? Status::kUnknown : Status::kDecided; }

Json structure_json(const StructureSpec& spec) {
  return Json{{"kind", to_string(spec.kind)}, {"description", spec.describe()}, {"spec", spec.text}};
}

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' ');
}

Json vertex_json(const RootedTree& t, const Vertex& v) {
  return Json{{"level", v.level}, {"index", v.index}, {"label", t.label(v)}};
}

Vertex parse_vertex(const RootedTree& t, const std::string& text) {
  if (text == "root" || text.empty()) return Vertex{0, 0};
  Path p;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, '.');) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit) || part.size() > 6)
      throw InputError("malformed vertex '" + text + "'");
    p.push_back(static_cast<unsigned>(std::stoul(part)));
  }
  return t.vertex(p);
}

Json branch_verdict_json(const BranchVerdict& v) {
  Json j{{"mu", to_string(v.mu)},
         {"nm", to_string(v.nm)},
         {"acl_member", v.acl_member},
         {"working_depth", v.working_depth},
         {"witness_index", to_json(v.witness_index)},
         {"measure_lower", to_json(v.measure_lower)},
         {"detail", v.detail}};
  j["separation"] = v.separation ? Json(*v.separation) : Json(nullptr);
  j["open_witness"] = v.open_witness ? Json(*v.open_witness) : Json(nullptr);
  j["orbit_open_from"] = v.orbit_open_from ? Json(*v.orbit_open_from) : Json(nullptr);
  Json seq = Json::array();
  for (const auto& x : v.index_sequence) seq.push_back(to_json(x));
  j["index_sequence"] = seq;
  return j;
}

std::string product_rows_text(const std::vector<LevelRow>& rows, std::size_t limit) {
  std::ostringstream out;
  out << "  " << pad("level", 7) << pad("n", 10) << pad("p q r r'", 14) << pad("ratio", 22) << "running\n";
  for (std::size_t i = 0; i < rows.size() && i < limit; ++i) {
    const auto& r = rows[i];
    std::string counts = std::to_string(r.counts.p) + " " + std::to_string(r.counts.q) + " " +
                         std::to_string(r.counts.r) + " " + std::to_string(r.counts.r_prime);
    std::string n = r.n.get_str();
    if (n.size() > 9) n = n.substr(0, 6) + "...";
    std::string ratio = to_string(r.ratio);
    if (ratio.size() > 21) ratio = "~" + std::to_string(r.ratio.get_d());
    out << "  " << pad(std::to_string(r.level), 7) << pad(n, 10) << pad(counts, 14) << pad(ratio, 22)
        << std::setprecision(6) << r.running.get_d() << "\n";
  }
  if (rows.size() > limit) out << "  ... " << rows.size() - limit << " more levels in the machine report\n";
  return out.str();
}

Report unknown_report(Json j, const std::string& why, std::string human_prefix) {
  j["verdict"] = "unknown";
  j["certificate"] = Json{{"undecidable", why}};
  Report r;
  r.json = std::move(j);
  r.human = human_prefix + "verdict: unknown\n  " + why + "\n";
  r.status = Status::kUnknown;
  return r;
}

}  // namespace

Report cmd_indep(const StructureSpec& spec, const std::string& a, const std::string& base,
                 const std::string& other, IndependenceKind kind) {
  Json j = report_header("indep");
  j["structure"] = structure_json(spec);
  j["query"] = Json{{"a", a}, {"base", base}, {"other", other}, {"kind", to_string(kind)}};
  std::string head = "independence (" + to_string(kind) + ") of a = {" + a + "} from B = {" + other +
                     "} over A = {" + base + "}\nstructure: " + spec.describe() + "\n";
  Report r;
  try {
    switch (spec.kind) {
      case StructureSpec::Kind::kProductSymmetric: {
        auto c = parse_product_points(a);
        if (c.empty()) throw InputError("the query needs at least one point");
        auto v = independent(kind, *spec.product, c, parse_product_points(base), parse_product_points(other));
        j["verdict"] = to_string(v.verdict);
        j["certificate"] = to_json(v);
        std::ostringstream h;
        h << head << product_rows_text(v.rows, 12);
        if (v.product) {
          h << "product: " << to_string(v.product->sign) << " (" << to_string(v.product->certificate) << ")";
          if (v.product->sign == ProductSign::kPositive)
            h << ", bounds [" << v.product->lower.get_d() << ", " << v.product->upper.get_d() << "]";
          h << "\n";
        }
        h << "verdict: " << to_string(v.verdict) << "\n  " << v.detail << "\n";
        r.human = h.str();
        r.status = status_of(v.verdict);
        break;
      }
      case StructureSpec::Kind::kTreeFullAut:
      case StructureSpec::Kind::kTreeRecursion: {
        auto ra = parse_boundary_points(a);
        auto v = branch_independence(*spec.tree, ra, parse_boundary_points(base), parse_boundary_points(other));
        Verdict verdict = kind == IndependenceKind::kMu ? v.mu : v.nm;
        j["verdict"] = to_string(verdict);
        j["certificate"] = branch_verdict_json(v);
        std::ostringstream h;
        h << head << "mu: " << to_string(v.mu) << ", nm: " << to_string(v.nm) << " (m coincides with nm on boundary orbits)\n";
        if (v.open_witness)
          h << "  open witness at level " << *v.open_witness << ", index " << v.witness_index << ", measure >= "
            << to_string(v.measure_lower) << "\n";
        h << "verdict: " << to_string(verdict) << "\n  " << v.detail << "\n";
        r.human = h.str();
        r.status = status_of(verdict);
        break;
      }
      case StructureSpec::Kind::kFinitePerm: {
        Tuple ta = parse_finite_points(*spec.action, a);
        if (ta.empty()) throw InputError("the query needs at least one point");
        auto f = finite_independence(spec.action, ta, parse_finite_points(*spec.action, base),
                                     parse_finite_points(*spec.action, other));
        Verdict verdict = f.measure > 0 ? Verdict::kIndependent : Verdict::kDependent;
        j["verdict"] = to_string(verdict);
        j["certificate"] = Json{{"measure", to_json(f.measure)},
                                {"product_size", f.product_size},
                                {"base_order", f.base_order},
                                {"orbit_over_a", f.orbit_over_a},
                                {"orbit_over_ab", f.orbit_over_ab}};
        std::ostringstream h;
        h << head << "|G_AB G_Aa| = " << f.product_size << ", |G_A| = " << f.base_order
          << ", measure " << to_string(f.measure) << "\n"
          << "orbits: |o(a/A)| = " << f.orbit_over_a << ", |o(a/AB)| = " << f.orbit_over_ab << "\n"
          << "verdict: " << to_string(verdict) << "\n";
        r.human = h.str();
        break;
      }
    }
  } catch (const UndecidableError& e) {
    return unknown_report(std::move(j), e.what(), head);
  }
  r.json = std::move(j);
  return r;
}

Report cmd_counterexample(std::size_t levels, const std::optional<std::vector<Integer>>& sizes) {
  CounterexampleProfile p = counterexample_profile(levels, sizes);
  Json j = report_header("counterexample");
  j["query"] = Json{{"levels", levels}};
  if (sizes) {
    Json s = Json::array();
    for (const auto& n : *sizes) s.push_back(to_json(n));
    j["query"]["sizes"] = s;
  }
  Json rows = Json::array();
  std::ostringstream h;
  h << "H1 = stab(n_i), H2 = stab(1) in S_{n_i}, x_i = 1 - 2^-(i+2)\n";
  h << "  " << pad("level", 7) << pad("n", 8) << pad("|H1H2|/|S_n|", 14) << pad("x_i", 12) << pad("running", 12)
    << "H1H2 != S_n\n";
  for (const auto& row : p.rows) {
    Json rj{{"level", row.level},          {"n", to_json(row.n)},       {"x", to_json(row.x)},
            {"ratio", to_json(row.ratio)}, {"running", to_json(row.running)}, {"enumerated", row.enumerated},
            {"proper", row.proper}};
    rj["product_size"] = row.product_size ? Json(*row.product_size) : Json(nullptr);
    rj["size_bound"] = row.size_bound ? to_json(*row.size_bound) : Json(nullptr);
    rows.push_back(rj);
    h << "  " << pad(std::to_string(row.level), 7) << pad(row.n.get_str(), 8) << pad(to_string(row.ratio), 14)
      << pad(to_string(row.x), 12) << pad(std::to_string(row.running.get_d()).substr(0, 8), 12)
      << (row.proper ? "yes" : "no") << "\n";
  }
  Verdict verdict = p.exceeds_half ? Verdict::kIndependent : Verdict::kDependent;
  j["certificate"] = Json{{"rows", rows},
                          {"running", to_json(p.running)},
                          {"exceeds_half", p.exceeds_half},
                          {"all_proper", p.all_proper},
                          {"overridden", p.overridden},
                          {"sizes", p.sizes.describe()},
                          {"a", p.a.to_string()},
                          {"b", p.b.to_string()},
                          {"mu", to_json(p.mu)},
                          {"nm", to_json(p.nm)}};
  j["verdict"] = p.exceeds_half ? "exceeds-half" : "at-most-half";
  h << "running product " << to_string(p.running) << (p.exceeds_half ? " > 1/2" : " <= 1/2") << "\n";
  h << "a = " << p.a.to_string() << ", b = " << p.b.to_string() << ": mu " << to_string(p.mu.verdict) << ", nm "
    << to_string(p.nm.verdict) << "\n";
  (void)verdict;
  Report r;
  r.json = std::move(j);
  r.human = h.str();
  r.status = (p.mu.verdict == Verdict::kUnknown || p.nm.verdict == Verdict::kUnknown) ? Status::kUnknown
                                                                                       : Status::kDecided;
  return r;
}

Report cmd_branch(const StructureSpec& spec, const BranchArgs& args) {
  if (!spec.is_tree()) throw InputError("branch commands need a tree structure");
  const TruncatedTreeGroup& g = *spec.tree;
  const RootedTree& t = g.tree();
  Json j = report_header("branch");
  j["structure"] = structure_json(spec);
  j["query"] = Json{{"sub", args.sub}};
  j["certificate"]["arity"] = t.arity().describe();
  j["certificate"]["depth"] = g.depth();
  std::ostringstream h;
  h << "structure: " << spec.describe() << "\n";
  Report r;
  try {
    if (args.sub == "verify") {
      auto rep = verify_branch_axioms(g);
      Json c = j["certificate"];
      c["order"] = to_json(rep.order);
      c["transitive"] = rep.transitive;
      Json orders = Json::array(), indices = Json::array();
      for (std::size_t n = 0; n < rep.rist_order.size(); ++n) {
        orders.push_back(to_json(rep.rist_order[n]));
        indices.push_back(to_json(rep.rist_index[n]));
      }
      c["rist_order"] = orders;
      c["rist_index"] = indices;
      c["rist_product"] = rep.rist_product;
      c["all_transitive"] = rep.all_transitive;
      j["certificate"] = c;
      bool products = std::all_of(rep.rist_product.begin(), rep.rist_product.end(), [](bool b) { return b; });
      j["verdict"] = rep.all_transitive && products ? "branch-axioms-hold" : "branch-axioms-fail";
      h << "order " << rep.order << "\n";
      for (std::size_t l = 1; l <= g.depth(); ++l)
        h << "  level " << l << ": " << (rep.transitive[l - 1] ? "transitive" : "not transitive") << "\n";
      for (std::size_t n = 0; n < rep.rist_order.size(); ++n)
        h << "  rist(" << n << "): order " << rep.rist_order[n] << ", index " << rep.rist_index[n]
          << (rep.rist_product[n] ? "" : " (not the product of vertex rists)") << "\n";
      h << "verdict: " << j["verdict"].get<std::string>() << "\n";
    } else if (args.sub == "orbits") {
      Vertex v = parse_vertex(t, args.vertex);
      std::size_t level = args.level ? args.level : g.depth();
      auto ro = rist_boundary_orbits(g, v, level);
      j["query"]["vertex"] = vertex_json(t, v);
      j["query"]["level"] = level;
      j["certificate"]["vertex"] = vertex_json(t, v);
      j["certificate"]["level"] = level;
      j["certificate"]["orbits"] = ro.orbits;
      j["certificate"]["previous_count"] = ro.previous_count ? Json(*ro.previous_count) : Json(nullptr);
      j["certificate"]["stabilized"] = ro.stabilized;
      j["verdict"] = std::to_string(ro.orbits.size()) + " orbits";
      h << "rist(" << t.label(v) << ") on level " << level << " below " << t.label(v) << ": " << ro.orbits.size()
        << " orbits";
      if (ro.previous_count) h << " (level " << level - 1 << ": " << *ro.previous_count << ")";
      h << "\n";
      for (const auto& o : ro.orbits) {
        h << "  {";
        for (std::size_t i = 0; i < o.size() && i < 8; ++i) h << (i ? ", " : "") << t.label({level, o[i]});
        if (o.size() > 8) h << ", ... " << o.size() << " vertices";
        h << "}\n";
      }
    } else if (args.sub == "smallness") {
      auto f = parse_boundary_points(args.base);
      std::size_t level = args.level ? args.level : g.depth();
      auto s = smallness_profile(g, f, level);
      j["query"]["f"] = args.base;
      j["query"]["level"] = level;
      Json c = j["certificate"];
      c["level"] = level;
      c["orbits"] = s.orbits;
      Json omega = Json::array();
      for (const auto& o : s.omega) omega.push_back(Json{{"vertex", vertex_json(t, o.v)}, {"orbit_count", o.orbit_count}});
      c["omega"] = omega;
      c["ray_vertices"] = s.ray_vertices;
      c["predicted"] = s.predicted;
      c["matches_prediction"] = s.matches_prediction;
      c["within_prediction"] = s.within_prediction;
      c["counts_by_level"] = s.counts_by_level;
      c["linear_envelope"] = s.linear_envelope;
      c["rays"] = f.size();
      c["max_arity"] = t.arity().max_value();
      j["certificate"] = c;
      j["verdict"] = s.matches_prediction ? "matches-omega" : "differs-from-omega";
      h << "G_f on level " << level << ": " << s.orbits.size() << " orbits; omega predicts " << s.predicted << " ("
        << s.ray_vertices << " ray vertices";
      for (const auto& o : s.omega) h << " + " << o.orbit_count << " below " << t.label(o.v);
      h << ")\norbit counts by level:";
      for (auto c2 : s.counts_by_level) h << " " << c2;
      h << "\nverdict: " << j["verdict"].get<std::string>() << "\n";
    } else if (args.sub == "mu-checks") {
      auto delta = parse_boundary_point(args.point);
      auto f = parse_boundary_points(args.base);
      auto bc = boundary_mu_checks(g, delta, f);
      j["query"]["point"] = args.point;
      j["query"]["f"] = args.base;
      Json c = j["certificate"];
      c["acl_member"] = bc.acl_member;
      c["verdict"] = branch_verdict_json(bc.verdict);
      Json idx = Json::array();
      for (const auto& x : bc.stabilizer_indices) idx.push_back(to_json(x));
      c["stabilizer_indices"] = idx;
      c["strictly_increasing"] = bc.strictly_increasing;
      j["certificate"] = c;
      j["verdict"] = to_string(bc.verdict.mu);
      h << "delta = " << delta.to_string() << ", F = {" << args.base << "}\n";
      h << "mu: " << to_string(bc.verdict.mu) << ", nm: " << to_string(bc.verdict.nm)
        << ", in acl(F): " << (bc.acl_member ? "yes" : "no") << "\n";
      if (bc.verdict.open_witness) h << "  open witness at level " << *bc.verdict.open_witness << "\n";
      h << "[G : G_F] by level:";
      for (const auto& x : bc.stabilizer_indices) h << " " << x;
      h << "\n  " << bc.verdict.detail << "\n";
      r.status = status_of(bc.verdict.mu);
    } else if (args.sub == "rank") {
      RankArgs ra{args.point, args.base, args.pool, args.bound, 0, false};
      return cmd_rank(spec, ra);
    } else if (args.sub == "rist") {
      Vertex v = parse_vertex(t, args.vertex);
      auto rs = g.rigid_stabilizer(v);
      j["query"]["vertex"] = vertex_json(t, v);
      j["certificate"]["vertex"] = vertex_json(t, v);
      j["certificate"]["order"] = to_json(rs.order());
      j["certificate"]["index"] = to_json(Integer(g.whole().order() / rs.order()));
      j["verdict"] = "order " + rs.order().get_str();
      h << "rist(" << t.label(v) << "): order " << rs.order() << ", index " << g.whole().order() / rs.order() << "\n";
    } else if (args.sub == "rist-level") {
      if (args.level > g.depth()) throw InputError("level beyond the truncation depth");
      auto rs = g.rigid_level_stabilizer(args.level);
      j["query"]["level"] = args.level;
      j["certificate"]["level"] = args.level;
      j["certificate"]["order"] = to_json(rs.order());
      j["certificate"]["index"] = to_json(Integer(g.whole().order() / rs.order()));
      j["verdict"] = "order " + rs.order().get_str();
      h << "rist(" << args.level << "): order " << rs.order() << ", index " << g.whole().order() / rs.order() << "\n";
    } else {
      throw InputError("unknown branch subcommand '" + args.sub + "'");
    }
  } catch (const UndecidableError& e) {
    return unknown_report(std::move(j), e.what(), h.str());
  }
  r.json = std::move(j);
  r.human = h.str();
  return r;
}

namespace {

Json rank_json(const IndependenceOracle& o, const RankResult& rr) {
  Json chain = Json::array();
  for (const auto& s : rr.chain) {
    Json set = Json::array();
    for (PointId p : s) set.push_back(o.label(p));
    chain.push_back(set);
  }
  Json pool = Json::array();
  for (PointId p : rr.pool.points) pool.push_back(o.label(p));
  return Json{{"kind", to_string(rr.kind)},
              {"value", rr.value},
              {"bound", rr.bound},
              {"chain", chain},
              {"pool", pool},
              {"pool_mode", rr.pool.describe()},
              {"queries", rr.queries},
              {"detail", rr.detail}};
}

std::string rank_text(const IndependenceOracle& o, const RankResult& rr) {
  std::ostringstream h;
  h << "rank: " << rr.to_string() << " (search bound " << rr.bound << ", pool " << rr.pool.describe() << ")\n";
  h << "chain:";
  for (const auto& s : rr.chain) h << " " << o.label(s);
  h << "\n  " << rr.detail << "\n";
  return h.str();
}

}  // namespace

Report cmd_rank(const StructureSpec& spec, const RankArgs& args) {
  Json j = report_header("rank");
  j["structure"] = structure_json(spec);
  j["query"] = Json{{"point", args.point}, {"base", args.base}, {"pool", args.pool}, {"bound", args.bound},
                    {"subsets", args.subsets}, {"witness", args.witness}};
  std::string head = "rank of {" + args.point + "} over {" + args.base + "}\nstructure: " + spec.describe() + "\n";
  auto make_pool = [&](PointSet pts) {
    return args.subsets ? CandidatePool::subsets(std::move(pts), args.subsets) : CandidatePool::single(std::move(pts));
  };
  Report r;
  try {
    RankResult rr;
    std::shared_ptr<IndependenceOracle> oracle;
    PointSet a, base, pool;
    switch (spec.kind) {
      case StructureSpec::Kind::kProductSymmetric: {
        auto po = std::make_shared<ProductOracle>(*spec.product);
        auto pts = parse_product_points(args.point);
        if (pts.empty()) throw InputError("the query needs at least one point");
        if (args.witness) {
          if (!args.base.empty()) throw InputError("the residue-collision witness is taken over the empty set");
          rr = product_infinite_rank(*po, pts, static_cast<unsigned>(args.bound));
          oracle = po;
          j["rank"] = rank_json(*po, rr);
          j["rank"]["steps"] = rr.step_details;
          j["verdict"] = rr.to_string();
          r.human = head + rank_text(*po, rr);
          r.status = rr.kind == RankResult::Kind::kUnknown ? Status::kUnknown : Status::kDecided;
          r.json = std::move(j);
          return r;
        }
        for (const auto& p : pts) a.push_back(po->add(p));
        for (const auto& p : parse_product_points(args.base)) base.push_back(po->add(p));
        if (args.pool.empty()) {
          for (const auto& p : residue_collision_points(*spec.product, pts[0], static_cast<unsigned>(std::max<std::size_t>(args.bound, 1))))
            pool.push_back(po->add(p));
        } else {
          for (const auto& p : parse_product_points(args.pool)) pool.push_back(po->add(p));
        }
        oracle = po;
        break;
      }
      case StructureSpec::Kind::kTreeFullAut:
      case StructureSpec::Kind::kTreeRecursion: {
        auto bo = std::make_shared<BranchOracle>(spec.tree);
        for (const auto& p : parse_boundary_points(args.point)) a.push_back(bo->add(p));
        for (const auto& p : parse_boundary_points(args.base)) base.push_back(bo->add(p));
        for (const auto& p : parse_boundary_points(args.pool)) pool.push_back(bo->add(p));
        pool = set_union(make_set(pool), make_set(base));
        oracle = bo;
        break;
      }
      case StructureSpec::Kind::kFinitePerm: {
        auto fo = std::make_shared<FiniteOracle>(spec.action);
        for (Point p : parse_finite_points(*spec.action, args.point)) a.push_back(p);
        for (Point p : parse_finite_points(*spec.action, args.base)) base.push_back(p);
        if (args.pool.empty())
          for (PointId p = 0; p < spec.action->degree(); ++p) pool.push_back(p);
        else
          for (Point p : parse_finite_points(*spec.action, args.pool)) pool.push_back(p);
        oracle = fo;
        break;
      }
    }
    if (a.empty()) throw InputError("the query needs at least one point");
    CachedOracle cached(oracle);
    rr = mu_rank(cached, make_set(a), make_set(base), make_pool(pool), args.bound);
    j["rank"] = rank_json(cached, rr);
    j["verdict"] = rr.to_string();
    r.human = head + rank_text(cached, rr);
    r.status = rr.kind == RankResult::Kind::kUnknown ? Status::kUnknown : Status::kDecided;
  } catch (const UndecidableError& e) {
    return unknown_report(std::move(j), e.what(), head);
  }
  r.json = std::move(j);
  return r;
}

Report cmd_accept(const std::vector<int>& only, bool list_only) {
  Json j = report_header("accept");
  std::ostringstream h;
  Report r;
  if (list_only) {
    Json list = Json::array();
    for (const auto& c : acceptance_criteria()) {
      list.push_back(Json{{"id", c.id}, {"title", c.title}, {"budget_seconds", c.budget_seconds}});
      h << c.id << ". " << c.title << " (budget " << c.budget_seconds << " s)\n";
    }
    j["criteria"] = list;
    j["verdict"] = "listed";
    r.json = std::move(j);
    r.human = h.str();
    return r;
  }
  auto results = run_acceptance(only);
  Json list = Json::array();
  bool all = true;
  for (const auto& c : results) {
    bool ok = c.passed && c.within_budget;
    all = all && ok;
    list.push_back(Json{{"id", c.info.id},
                        {"title", c.info.title},
                        {"passed", c.passed},
                        {"within_budget", c.within_budget},
                        {"seconds", c.seconds},
                        {"budget_seconds", c.info.budget_seconds},
                        {"detail", c.detail}});
    h << (ok ? "PASS" : "FAIL") << " " << c.info.id << " " << c.info.title << " (" << std::fixed << std::setprecision(2)
      << c.seconds << " s / " << c.info.budget_seconds << " s): " << c.detail << "\n";
  }
  j["results"] = list;
  j["verdict"] = all ? "pass" : "fail";
  h << (all ? "all criteria passed" : "some criteria failed") << "\n";
  r.json = std::move(j);
  r.human = h.str();
  r.status = all ? Status::kDecided : Status::kError;
  return r;
}

Report cmd_check_report(const std::string& json_text) {
  Json input;
  try {
    input = Json::parse(json_text);
  } catch (const std::exception& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
  auto problems = check_report(input);
  Json j = report_header("check-report");
  j["checked_command"] = input.value("command", "");
  j["problems"] = problems;
  j["verdict"] = problems.empty() ? "valid" : "invalid";
  std::ostringstream h;
  h << "report of '" << input.value("command", "?") << "': " << (problems.empty() ? "certificate re-verifies" : "certificate rejected")
    << "\n";
  for (const auto& p : problems) h << "  " << p << "\n";
  Report r;
  r.json = std::move(j);
  r.human = h.str();
  r.status = problems.empty() ? Status::kDecided : Status::kError;
  return r;
}

}  // namespace muind
