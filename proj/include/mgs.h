#ifndef MGS_H
#define MGS_H

/* C interface to the metagrammar search library. All functions returning
 * mgs_status set a thread-local error message on failure, readable via
 * mgs_last_error() until the next failing call on the same thread. Strings
 * returned through char** out-parameters are heap-allocated; release them
 * with mgs_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  MGS_OK = 0,
  /* bad input: unparsable file, ill-sorted term, config mismatch */
  MGS_ERR_CONFIG = 2,
  /* the environment failed: missing solver binary, unwritable output */
  MGS_ERR_INFRASTRUCTURE = 3
} mgs_status;

enum { MGS_WIRING_SAME_INDEX = 0, MGS_WIRING_CASCADE = 1 };
enum { MGS_BACKEND_BUILTIN = 0, MGS_BACKEND_EXTERNAL = 1 };

/* One parsed SyGuS problem. */
typedef struct mgs_benchmark mgs_benchmark;

/* Knobs shared by solving, evaluation and evolution. Initialize with
 * mgs_options_init, then override fields. */
typedef struct {
  uint64_t seed;
  size_t population;
  size_t parents;
  size_t generations;
  double timeout_seconds; /* per solver call; the fitness formula's T */
  double mutation_rate;   /* per valid cell; < 0 means 1/valid-cells */
  size_t workers;
  size_t train_count;
  int wiring;  /* MGS_WIRING_* */
  int backend; /* MGS_BACKEND_* */
  const char *solver_binary; /* external backend only */
  const char *scratch_dir;   /* external backend only; NULL means "." */
} mgs_options;

void mgs_options_init(mgs_options *opt);

const char *mgs_version(void);
const char *mgs_last_error(void);
void mgs_string_free(char *s);

mgs_status mgs_benchmark_parse_file(const char *path, mgs_benchmark **out);
mgs_status mgs_benchmark_parse_text(const char *text, const char *source_id,
                                    mgs_benchmark **out);
void mgs_benchmark_free(mgs_benchmark *b);

/* Canonical SyGuS text of the benchmark. */
mgs_status mgs_benchmark_print(const mgs_benchmark *b, char **out);

/* The benchmark's matrix in serialized grid form, full instance. */
mgs_status mgs_structure_text(const mgs_benchmark *b, int wiring, char **out);

/* The role-keyed category matrix spanning every benchmark matching the
 * glob, full instance. */
mgs_status mgs_category_structure_text(const char *corpus_glob, int wiring,
                                       char **out);

/* SyGuS text with the grammar injected into the synth-fun. The grammar is
 * the benchmark's matrix restricted by the saved matrix at matrix_path, or
 * the full instance when matrix_path is NULL. */
mgs_status mgs_emit_with_matrix(const mgs_benchmark *b,
                                const char *matrix_path, int wiring,
                                char **out);

/* Runs one benchmark against the same grammar choice as
 * mgs_emit_with_matrix. The result text carries status, time, candidate
 * count and, when solved, the define-fun. */
mgs_status mgs_solve(const mgs_benchmark *b, const char *matrix_path,
                     const mgs_options *opt, char **out);

/* Full experiment: split the corpus (train_count/seed), evolve a category
 * matrix on the train set, evaluate best and full instances on the test
 * set. Writes matrix.txt, history.csv, results.csv, report.csv, report.txt
 * under out_dir; returns the rendered report. */
mgs_status mgs_run_experiment(const char *corpus_glob,
                              const char *category_label, const char *out_dir,
                              const mgs_options *opt, char **report_out);

/* Re-evaluates a saved matrix over a corpus; returns the results CSV
 * followed by the report row. */
mgs_status mgs_eval_matrix(const char *matrix_path, const char *corpus_glob,
                           const mgs_options *opt, char **report_out);

#ifdef __cplusplus
}
#endif

#endif
