/* Copyright 2026 The muind Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Exercises the C surface from plain C. */

#include <stdio.h>
#include <string.h>

#include "muind/muind.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static const char* kProduct =
    "kind = product-symmetric\n"
    "growth = geometric\n"
    "base = 2\n";

static const char* kBinary =
    "kind = tree-full-aut\n"
    "arity = 2\n"
    "depth = 4\n";

static void test_structures(void) {
  muind_structure* s = NULL;
  EXPECT(muind_structure_parse(kProduct, -1, &s) == MUIND_OK);
  EXPECT(strcmp(muind_structure_kind(s), "product-symmetric") == 0);
  EXPECT(strstr(muind_structure_describe(s), "2^(i+1)") != NULL);
  muind_structure_free(s);

  s = NULL;
  EXPECT(muind_structure_parse("kind = tree-full-aut\narity = 2\n", -1, &s) == MUIND_ERR_PARSE);
  EXPECT(s == NULL);
  EXPECT(strstr(muind_last_error(), "depth") != NULL);
  EXPECT(muind_structure_load("/nonexistent/spec", -1, &s) == MUIND_ERR_INPUT);
  EXPECT(muind_structure_parse(NULL, -1, &s) == MUIND_ERR_NULL);
  muind_structure_free(NULL);
}

static void test_indep(void) {
  muind_structure* s = NULL;
  muind_report* r = NULL;
  EXPECT(muind_structure_parse(kProduct, 16, &s) == MUIND_OK);

  EXPECT(muind_indep(s, "last", "", "first", MUIND_MU, &r) == MUIND_OK);
  EXPECT(muind_report_outcome(r) == MUIND_DECIDED);
  EXPECT(strstr(muind_report_text(r), "verdict: independent") != NULL);

  muind_report* check = NULL;
  EXPECT(muind_check_report(muind_report_json(r), &check) == MUIND_OK);
  EXPECT(muind_report_outcome(check) == MUIND_DECIDED);
  muind_report_free(check);
  muind_report_free(r);

  EXPECT(muind_indep(s, "last", "", "first", MUIND_NM, &r) == MUIND_OK);
  EXPECT(strstr(muind_report_json(r), "\"verdict\": \"dependent\"") != NULL);
  muind_report_free(r);

  EXPECT(muind_indep(s, "1,2", NULL, "first", MUIND_MU, &r) == MUIND_OK);
  EXPECT(muind_report_outcome(r) == MUIND_UNKNOWN);
  muind_report_free(r);

  EXPECT(muind_indep(s, "9;first", "", "", MUIND_MU, &r) == MUIND_ERR_INPUT);
  EXPECT(muind_indep(s, "last", "", "", (muind_kind)7, &r) == MUIND_ERR_INPUT);
  muind_structure_free(s);
}

static void test_branch_and_rank(void) {
  muind_structure* s = NULL;
  muind_report* r = NULL;
  EXPECT(muind_structure_parse(kBinary, -1, &s) == MUIND_OK);

  muind_branch_args b = {"smallness", NULL, "left", NULL, NULL, NULL, 0, 3};
  EXPECT(muind_branch(s, &b, &r) == MUIND_OK);
  EXPECT(strstr(muind_report_text(r), "5 orbits") != NULL);
  muind_report_free(r);

  muind_branch_args bad = {"nonsense", NULL, NULL, NULL, NULL, NULL, 0, 3};
  EXPECT(muind_branch(s, &bad, &r) == MUIND_ERR_INPUT);

  muind_rank_args ra = {"left", "", "right", 3, 0, 0};
  EXPECT(muind_rank(s, &ra, &r) == MUIND_OK);
  EXPECT(strstr(muind_report_text(r), "rank: 1") != NULL);
  muind_report_free(r);
  muind_structure_free(s);
}

static void test_misc(void) {
  char buf[32];
  muind_report* r = NULL;
  EXPECT(strcmp(muind_version(), "0.1.0") == 0);
  EXPECT(muind_double_coset_ratio(8, 1, 2, 2, 1, buf, sizeof buf) == MUIND_OK);
  EXPECT(strcmp(buf, "5/42") == 0);
  EXPECT(muind_double_coset_ratio(8, 1, 2, 2, 1, buf, 3) == MUIND_ERR_INPUT);
  EXPECT(muind_double_coset_ratio(3, 1, 1, 1, 1, buf, sizeof buf) == MUIND_ERR_INPUT);

  EXPECT(muind_counterexample(0, NULL, &r) == MUIND_OK);
  EXPECT(muind_report_outcome(r) == MUIND_DECIDED);
  muind_report_free(r);
  EXPECT(muind_counterexample(2, "2 x", &r) == MUIND_ERR_INPUT);

  int only[] = {6};
  EXPECT(muind_accept(only, 1, 0, &r) == MUIND_OK);
  EXPECT(muind_report_outcome(r) == MUIND_DECIDED);
  EXPECT(strstr(muind_report_text(r), "PASS 6") != NULL);
  muind_report_free(r);
  int none[] = {42};
  EXPECT(muind_accept(none, 1, 0, &r) == MUIND_ERR_INPUT);

  EXPECT(muind_check_report("not json", &r) == MUIND_ERR_INPUT);
  EXPECT(muind_check_report("{\"schema\": \"other\"}", &r) == MUIND_OK);
  EXPECT(muind_report_outcome(r) == MUIND_FAILED);
  muind_report_free(r);
}

int main(void) {
  test_structures();
  test_indep();
  test_branch_and_rank();
  test_misc();
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("C API checks passed\n");
  return failures ? 1 : 0;
}
