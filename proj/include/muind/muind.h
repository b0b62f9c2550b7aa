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

#ifndef MUIND_MUIND_H
#define MUIND_MUIND_H

#include <stddef.h>
#include <stdint.h>

#if defined(MUIND_BUILDING_LIBRARY)
#define MUIND_API __attribute__((visibility("default")))
#else
#define MUIND_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero codes match the error categories of the C++ core. */
typedef enum muind_status {
  MUIND_OK = 0,
  MUIND_ERR_INPUT = 1,
  MUIND_ERR_PARSE = 2,
  MUIND_ERR_CAPACITY = 3,
  MUIND_ERR_UNDECIDABLE = 4,
  MUIND_ERR_INTERNAL = 5,
  MUIND_ERR_NULL = 6
} muind_status;

/* Outcome carried by a report; also the CLI exit status. */
typedef enum muind_outcome {
  MUIND_DECIDED = 0,
  MUIND_FAILED = 1,
  MUIND_UNKNOWN = 2
} muind_outcome;

typedef enum muind_kind { MUIND_MU = 0, MUIND_NM = 1, MUIND_M = 2 } muind_kind;

typedef struct muind_structure muind_structure;
typedef struct muind_report muind_report;

MUIND_API const char* muind_version(void);

/* Message of the last failure on the calling thread; empty after success. */
MUIND_API const char* muind_last_error(void);

/* depth < 0 keeps the depth of the spec. */
MUIND_API muind_status muind_structure_load(const char* path, long depth, muind_structure** out);
MUIND_API muind_status muind_structure_parse(const char* text, long depth, muind_structure** out);
MUIND_API void muind_structure_free(muind_structure* s);
/* "finite-perm", "product-symmetric", "tree-full-aut" or "tree-recursion". */
MUIND_API const char* muind_structure_kind(const muind_structure* s);
MUIND_API const char* muind_structure_describe(const muind_structure* s);

/* Point sets are whitespace separated in the syntax of the structure kind. */
MUIND_API muind_status muind_indep(const muind_structure* s, const char* a, const char* base, const char* other,
                                   muind_kind kind, muind_report** out);

/* sizes may be NULL for the default profile; otherwise whitespace separated. */
MUIND_API muind_status muind_counterexample(size_t levels, const char* sizes, muind_report** out);

typedef struct muind_branch_args {
  const char* sub; /* verify | orbits | smallness | mu-checks | rank | rist | rist-level */
  const char* point;
  const char* base;
  const char* other;
  const char* pool;
  const char* vertex; /* NULL means the root */
  size_t level;
  size_t bound;
} muind_branch_args;

MUIND_API muind_status muind_branch(const muind_structure* s, const muind_branch_args* args, muind_report** out);

typedef struct muind_rank_args {
  const char* point;
  const char* base;
  const char* pool;
  size_t bound;
  size_t subsets; /* 0: one point per step */
  int witness;    /* nonzero: residue-collision chain (product family) */
} muind_rank_args;

MUIND_API muind_status muind_rank(const muind_structure* s, const muind_rank_args* args, muind_report** out);

/* only: criterion ids, count entries; count 0 runs all. */
MUIND_API muind_status muind_accept(const int* only, size_t count, int list_only, muind_report** out);

MUIND_API muind_status muind_check_report(const char* json, muind_report** out);

MUIND_API void muind_report_free(muind_report* r);
MUIND_API const char* muind_report_json(const muind_report* r);
MUIND_API const char* muind_report_text(const muind_report* r);
MUIND_API muind_outcome muind_report_outcome(const muind_report* r);

/* |G_AB G_AC| / |G_A| in Sym(n) as "num/den"; buf receives a NUL-terminated string.
   Returns MUIND_ERR_INPUT if buf is too small or the counts are out of range. */
MUIND_API muind_status muind_double_coset_ratio(uint64_t n, uint64_t p, uint64_t q, uint64_t r, uint64_t r_prime,
                                                char* buf, size_t buf_size);

#ifdef __cplusplus
}
#endif

#endif /* MUIND_MUIND_H */
