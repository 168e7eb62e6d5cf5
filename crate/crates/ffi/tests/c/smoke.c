#include <stdio.h>
#include <string.h>

#include "cnftree.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  CnfFormula *f = NULL;
  CHECK(cnftree_formula_gen_fn(10, &f) == CNF_STATUS_OK);
  CHECK(cnftree_formula_clause_count(f) == 1);

  CnfVerdict *v = NULL;
  CHECK(cnftree_solve(f, NULL, &v) == CNF_STATUS_OK);
  CHECK(cnftree_verdict_result(v) == CNF_RESULT_SATISFIABLE);
  CnfCounters c;
  CHECK(cnftree_verdict_counters(v, &c) == CNF_STATUS_OK);
  CHECK(c.peak_nodes_incl_root == 1024);
  CHECK(c.prune_pointer_visits == 2047);
  cnftree_verdict_free(v);

  char *text = NULL;
  CHECK(cnftree_formula_emit_dimacs(f, &text) == CNF_STATUS_OK);
  CHECK(strstr(text, "1 2 3 4 5 6 7 8 9 10 0") != NULL);
  cnftree_string_free(text);
  cnftree_formula_free(f);

  CHECK(cnftree_formula_parse_dimacs("p cnf 1 1\n2 0\n", &f) == CNF_STATUS_PARSE_ERROR);
  CHECK(cnftree_last_error() != NULL);
  puts("ok");
  return 0;
}
