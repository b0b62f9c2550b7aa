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

#include "muind/muind.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "muind/errors.hpp"
#include "muind/measure.hpp"
#include "muind/spec_format.hpp"
#include "report.hpp"

struct muind_structure {
  muind::StructureSpec spec;
  std::string kind;
  std::string describe;
};

struct muind_report {
  std::string json;
  std::string text;
  muind_outcome outcome;
};

namespace {

thread_local std::string last_error;

muind_status fail(muind_status code, const std::string& what) {
  last_error = what;
  return code;
}

// Runs fn, mapping exceptions onto status codes.
template <class Fn>
muind_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return MUIND_OK;
  } catch (const muind::Error& e) {
    return fail(static_cast<muind_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MUIND_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(MUIND_ERR_INTERNAL, e.what());
  }
}

std::string text_or_empty(const char* s) { return s ? s : ""; }

std::optional<std::size_t> depth_arg(long depth) {
  if (depth < 0) return std::nullopt;
  return static_cast<std::size_t>(depth);
}

void emit(const muind::Report& r, muind_report** out) {
  auto* rep = new muind_report;
  rep->json = r.json.dump(2);
  rep->text = r.human;
  rep->outcome = static_cast<muind_outcome>(r.status);
  *out = rep;
}

muind_structure* wrap(muind::StructureSpec spec) {
  auto* s = new muind_structure{std::move(spec), "", ""};
  s->kind = muind::to_string(s->spec.kind);
  s->describe = s->spec.describe();
  return s;
}

}  // namespace

extern "C" {

const char* muind_version(void) { return muind::kVersion; }

const char* muind_last_error(void) { return last_error.c_str(); }

muind_status muind_structure_load(const char* path, long depth, muind_structure** out) {
  if (!path || !out) return fail(MUIND_ERR_NULL, "null argument");
  return guarded([&] { *out = wrap(muind::load_spec(path, depth_arg(depth))); });
}

muind_status muind_structure_parse(const char* text, long depth, muind_structure** out) {
  if (!text || !out) return fail(MUIND_ERR_NULL, "null argument");
  return guarded([&] { *out = wrap(muind::parse_spec(text, depth_arg(depth))); });
}

void muind_structure_free(muind_structure* s) { delete s; }

const char* muind_structure_kind(const muind_structure* s) { return s ? s->kind.c_str() : ""; }

const char* muind_structure_describe(const muind_structure* s) { return s ? s->describe.c_str() : ""; }

muind_status muind_indep(const muind_structure* s, const char* a, const char* base, const char* other, muind_kind kind,
                         muind_report** out) {
  if (!s || !a || !out) return fail(MUIND_ERR_NULL, "null argument");
  muind::IndependenceKind k;
  switch (kind) {
    case MUIND_MU: k = muind::IndependenceKind::kMu; break;
    case MUIND_NM: k = muind::IndependenceKind::kNm; break;
    case MUIND_M: k = muind::IndependenceKind::kM; break;
    default: return fail(MUIND_ERR_INPUT, "unknown independence kind");
  }
  return guarded([&] { emit(muind::cmd_indep(s->spec, a, text_or_empty(base), text_or_empty(other), k), out); });
}

muind_status muind_counterexample(size_t levels, const char* sizes, muind_report** out) {
  if (!out) return fail(MUIND_ERR_NULL, "null argument");
  return guarded([&] {
    std::optional<std::vector<muind::Integer>> v;
    if (sizes) {
      v.emplace();
      for (const auto& w : muind::split_words(sizes)) v->push_back(muind::parse_integer(w));
    }
    emit(muind::cmd_counterexample(levels, v), out);
  });
}

muind_status muind_branch(const muind_structure* s, const muind_branch_args* args, muind_report** out) {
  if (!s || !args || !args->sub || !out) return fail(MUIND_ERR_NULL, "null argument");
  return guarded([&] {
    muind::BranchArgs b;
    b.sub = args->sub;
    b.point = text_or_empty(args->point);
    b.base = text_or_empty(args->base);
    b.other = text_or_empty(args->other);
    b.pool = text_or_empty(args->pool);
    if (args->vertex) b.vertex = args->vertex;
    b.level = args->level;
    b.bound = args->bound;
    emit(muind::cmd_branch(s->spec, b), out);
  });
}

muind_status muind_rank(const muind_structure* s, const muind_rank_args* args, muind_report** out) {
  if (!s || !args || !args->point || !out) return fail(MUIND_ERR_NULL, "null argument");
  return guarded([&] {
    muind::RankArgs r;
    r.point = args->point;
    r.base = text_or_empty(args->base);
    r.pool = text_or_empty(args->pool);
    r.bound = args->bound;
    r.subsets = args->subsets;
    r.witness = args->witness != 0;
    emit(muind::cmd_rank(s->spec, r), out);
  });
}

muind_status muind_accept(const int* only, size_t count, int list_only, muind_report** out) {
  if (!out || (count && !only)) return fail(MUIND_ERR_NULL, "null argument");
  return guarded([&] { emit(muind::cmd_accept(std::vector<int>(only, only + count), list_only != 0), out); });
}

muind_status muind_check_report(const char* json, muind_report** out) {
  if (!json || !out) return fail(MUIND_ERR_NULL, "null argument");
  return guarded([&] { emit(muind::cmd_check_report(json), out); });
}

void muind_report_free(muind_report* r) { delete r; }

const char* muind_report_json(const muind_report* r) { return r ? r->json.c_str() : ""; }

const char* muind_report_text(const muind_report* r) { return r ? r->text.c_str() : ""; }

muind_outcome muind_report_outcome(const muind_report* r) { return r ? r->outcome : MUIND_FAILED; }

muind_status muind_double_coset_ratio(uint64_t n, uint64_t p, uint64_t q, uint64_t r, uint64_t r_prime, char* buf,
                                      size_t buf_size) {
  if (!buf) return fail(MUIND_ERR_NULL, "null argument");
  return guarded([&] {
    std::string s = muind::to_string(muind::double_coset_ratio(n, p, q, r, r_prime));
    if (s.size() + 1 > buf_size) throw muind::InputError("buffer of " + std::to_string(buf_size) + " bytes is too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

}  // extern "C"
