#ifndef CNFTREE_H
#define CNFTREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CnfStatus {
  CNF_STATUS_OK = 0,
  CNF_STATUS_NULL_ARGUMENT = 1,
  CNF_STATUS_INVALID_UTF8 = 2,
  CNF_STATUS_PARSE_ERROR = 3,
  CNF_STATUS_RESOURCE_LIMIT = 4,
  CNF_STATUS_GUARD_EXCEEDED = 5,
  CNF_STATUS_CONTRACT_VIOLATION = 6,
  CNF_STATUS_EMIT_ERROR = 7,
  CNF_STATUS_PANIC = 99,
} CnfStatus;

typedef enum CnfSchedule {
  CNF_SCHEDULE_PER_CLAUSE = 0,
  CNF_SCHEDULE_POST_CONSTRUCTION = 1,
} CnfSchedule;

typedef enum CnfEmptyPolicy {
  CNF_EMPTY_POLICY_ACCEPT = 0,
  CNF_EMPTY_POLICY_REJECT = 1,
} CnfEmptyPolicy;

/*
 Matches the CLI exit codes.
 */
typedef enum CnfResult {
  CNF_RESULT_SATISFIABLE = 10,
  CNF_RESULT_UNSATISFIABLE = 20,
} CnfResult;

typedef enum CnfBoundsVerdict {
  CNF_BOUNDS_VERDICT_UNKNOWN = 0,
  CNF_BOUNDS_VERDICT_UNSAT_BY_BOUND1 = 1,
  CNF_BOUNDS_VERDICT_UNSAT_BY_BOUND2 = 2,
} CnfBoundsVerdict;

/*
 Opaque formula handle.
 */
typedef struct CnfFormula CnfFormula;

/*
 Opaque verdict handle.
 */
typedef struct CnfVerdict CnfVerdict;

typedef struct CnfSolveConfig {
  enum CnfSchedule schedule;
  enum CnfEmptyPolicy empty_policy;
  /*
   Live-node guard, root included. 0 disables it.
   */
  uint64_t node_limit;
} CnfSolveConfig;

typedef struct CnfCounters {
  uint64_t nodes_created;
  uint64_t nodes_deleted;
  uint64_t peak_nodes_incl_root;
  uint64_t current_nodes_incl_root;
  uint64_t prune_pointer_visits;
  uint64_t open_pointers_final;
} CnfCounters;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or NULL. Owned by the
 library.
 */
const char *cnftree_last_error(void);

/*
 # Safety
 `s` must come from this library and not have been freed.
 */
void cnftree_string_free(char *s);

/*
 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CnfStatus cnftree_formula_parse_dimacs(const char *text, struct CnfFormula **out);

/*
 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CnfStatus cnftree_formula_parse_native(const char *text, struct CnfFormula **out);

/*
 The single clause `{x1, ..., xn}`.

 # Safety
 `out` must be writable.
 */
enum CnfStatus cnftree_formula_gen_fn(uint32_t n, struct CnfFormula **out);

/*
 # Safety
 `f` must be NULL or a live handle.
 */
void cnftree_formula_free(struct CnfFormula *f);

/*
 Number of clauses, or 0 for NULL.

 # Safety
 `f` must be NULL or a live handle.
 */
size_t cnftree_formula_clause_count(const struct CnfFormula *f);

/*
 Number of distinct variables, or 0 for NULL.

 # Safety
 `f` must be NULL or a live handle.
 */
size_t cnftree_formula_variable_count(const struct CnfFormula *f);

/*
 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum CnfStatus cnftree_formula_emit_dimacs(const struct CnfFormula *f, char **out);

/*
 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum CnfStatus cnftree_formula_emit_native(const struct CnfFormula *f, char **out);

/*
 Per-clause pruning, accept the empty formula, 2^26 node guard.
 */
struct CnfSolveConfig cnftree_solve_config_default(void);

/*
 Runs the clause-tree procedure. `cfg` may be NULL for the defaults.

 # Safety
 `f` must be a live handle, `cfg` NULL or valid, `out` writable.
 */
enum CnfStatus cnftree_solve(const struct CnfFormula *f,
                             const struct CnfSolveConfig *cfg,
                             struct CnfVerdict **out);

/*
 Truth-table decision (at most 24 variables).

 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum CnfStatus cnftree_truth_table(const struct CnfFormula *f, struct CnfVerdict **out);

/*
 Search for a fully populated clause with no subset in the formula (at
 most 24 variables).

 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum CnfStatus cnftree_thm108(const struct CnfFormula *f, struct CnfVerdict **out);

/*
 # Safety
 `v` must be a live handle.
 */
enum CnfResult cnftree_verdict_result(const struct CnfVerdict *v);

/*
 Fails with `CONTRACT_VIOLATION` for oracle verdicts, which carry no
 counters.

 # Safety
 `v` must be a live handle; `out` must be writable.
 */
enum CnfStatus cnftree_verdict_counters(const struct CnfVerdict *v, struct CnfCounters *out);

/*
 Writes 1 (true) or 0 (false) for variable `var` of the witness.

 # Safety
 `v` must be a live handle; `out` must be writable.
 */
enum CnfStatus cnftree_verdict_witness_value(const struct CnfVerdict *v,
                                             uint32_t var,
                                             int32_t *out);

/*
 # Safety
 `v` must be NULL or a live handle.
 */
void cnftree_verdict_free(struct CnfVerdict *v);

/*
 Applies the bound filters; `out_forced` receives the number of forced
 variables.

 # Safety
 `f` must be a live, tautology-free handle; the out pointers writable.
 */
enum CnfStatus cnftree_bounds(const struct CnfFormula *f,
                              enum CnfBoundsVerdict *out_verdict,
                              size_t *out_forced);

/*
 DOT rendering of the final clause tree after solving.

 # Safety
 `f` must be a live handle, `cfg` NULL or valid, `out` writable.
 */
enum CnfStatus cnftree_final_tree_dot(const struct CnfFormula *f,
                                      const struct CnfSolveConfig *cfg,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CNFTREE_H */
