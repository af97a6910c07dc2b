/* C interface to the eprgames library.
 *
 * All functions return an epr_status; on failure epr_last_error() carries a
 * thread-local diagnostic for the failing call. Objects are created through
 * epr_*_create functions and released with the matching epr_*_free. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with epr_string_free.
 */
#ifndef EPRGAMES_H
#define EPRGAMES_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum epr_status {
  EPR_OK = 0,
  EPR_ERR_INVALID_ARGUMENT = 1, /* malformed input or unknown name */
  EPR_ERR_DOMAIN = 2,           /* argument outside the operation's domain */
  EPR_ERR_PRECONDITION = 3,     /* stated precondition violated */
  EPR_ERR_INSUFFICIENT_DATA = 4,
  EPR_ERR_NO_SOLUTION = 5,
  EPR_ERR_INTERNAL = 6
} epr_status;

typedef enum epr_model {
  EPR_MODEL_CLASSICAL = 0,
  EPR_MODEL_SINGLET = 1,
  EPR_MODEL_MIXTURE = 2
} epr_model;

typedef struct epr_game epr_game;
typedef struct epr_gfun epr_gfun;
typedef struct epr_measure epr_measure;

const char* epr_version(void);

/* Message describing the most recent failure on this thread. */
const char* epr_last_error(void);

void epr_string_free(char* s);

/* -------- bimatrix games -------- */

/* Built-ins: "pd1", "pd2", "matching-pennies", "bos", "model-of-entry". */
epr_status epr_game_create_named(const char* name, epr_game** out);
epr_status epr_game_create_from_json(const char* json, epr_game** out);
void epr_game_free(epr_game* game);

epr_status epr_game_to_json(const epr_game* game, char** json_out);
epr_status epr_game_payoff(const epr_game* game, double pa, double pb,
                           double* out_a, double* out_b);
epr_status epr_game_pure_nash(const epr_game* game, char** json_out);
epr_status epr_game_mixed_nash(const epr_game* game, char** json_out);
epr_status epr_game_pareto_optimal(const epr_game* game, int row, int col,
                                   int* out);

/* -------- g-functions -------- */

/* spec: builtin address like "g1" or "g3?delta=0.5&eps=0.7853981634". */
epr_status epr_gfun_create(const char* spec, epr_gfun** out);
epr_status epr_gfun_create_from_json(const char* json, epr_gfun** out);
void epr_gfun_free(epr_gfun* g);

epr_status epr_gfun_eval(const epr_gfun* g, double theta, double* out);
epr_status epr_gfun_big_g(const epr_gfun* g, double x, double* out);
epr_status epr_gfun_invertible(const epr_gfun* g, int* out);

/* Writes up to cap angles; *n_out is the full solution count. non_unique is
 * set when a constant segment was hit (endpoints stand in for an interval). */
epr_status epr_gfun_inverse(const epr_gfun* g, double p, double* out, int cap,
                            int* n_out, int* non_unique);
epr_status epr_gfun_q_transform(const epr_gfun* g, double p, double* out,
                                int cap, int* n_out);

/* -------- correlation games -------- */

epr_status epr_corr_payoff(const epr_game* game, const epr_gfun* g,
                           double corr_ac, double corr_cb, double* out_a,
                           double* out_b);

/* Equilibria of the correlation game: classical pure/mixed equilibria, their
 * transformed quantum locations, payoffs, and a grid-search confirmation.
 * JSON fields: classical_ne, quantum_ne, quantum_ne_all, payoffs, grid. */
epr_status epr_corr_solve(const epr_game* game, const epr_gfun* g,
                          epr_model model, int grid_n, char** json_out);

/* CSV "theta_a,theta_b,payoff_a,payoff_b" over a steps x steps angle grid. */
epr_status epr_corr_sweep_csv(const epr_game* game, const epr_gfun* g,
                              epr_model model, int steps, char** csv_out);

/* -------- EPR protocol simulator -------- */

/* Runs the sampled protocol and reports the arbiter's digest as JSON
 * (counts, p-hats, per-pair correlations; a reward when game and g are
 * supplied). game and g may be NULL. */
epr_status epr_sim_run(epr_model model, double theta_a, double theta_b,
                       double pa, double pb, uint64_t runs, uint64_t seed,
                       const epr_game* game, const epr_gfun* g,
                       char** json_report_out);

/* CSV "run,axisA,axisB,a,b" dump of the sampled records. */
epr_status epr_sim_records_csv(epr_model model, double theta_a, double theta_b,
                               double pa, double pb, uint64_t runs,
                               uint64_t seed, char** csv_out);

/* -------- LHV measures and four-coin games -------- */

epr_status epr_measure_create(const double m[16], epr_measure** out);
epr_status epr_measure_create_from_json(const char* json, epr_measure** out);
void epr_measure_free(epr_measure* measure);

epr_status epr_measure_stats(const epr_measure* measure, double p_out[16]);
epr_status epr_measure_chsh(const epr_measure* measure, double* delta_out);

/* Full analysis: induced stats + validation, CHSH, perfect-correlation
 * reduction, split payoffs and NE analysis for the game (game must be a
 * symmetric 2x2; may be NULL for the measure-only part). */
epr_status epr_lhv_analyze(const epr_measure* measure, const epr_game* game,
                           char** json_out);

/* CSV sweep of the diagonal family m4=1-2x, m13=m16=x over x in [from,to]. */
epr_status epr_lhv_scan_m13_csv(const epr_game* game, double from, double to,
                                int steps, char** csv_out);

/* -------- quantum reference -------- */

/* CHSH on c00|00>+c11|11> with the direction family a=(1,0,0), a'=(0,0,1),
 * b=(xb,0,zb), b'=(-xb,0,zb). */
epr_status epr_quantum_chsh_family(double c00, double c11, double xb, double zb,
                                   double* delta_out);
epr_status epr_quantum_chsh(double c00, double c11, const double a[3],
                            const double ap[3], const double b[3],
                            const double bp[3], double* delta_out);

epr_status epr_quantum_eisert(double r, double s, double t, double u,
                              double theta_a, double phi_a, double theta_b,
                              double phi_b, double gamma, double* out_a,
                              double* out_b);

epr_status epr_quantum_meyer(double picard_flip_prob, double* out);
epr_status epr_quantum_meyer_classical(double picard_flip_prob, double* out);

#ifdef __cplusplus
}
#endif

#endif /* EPRGAMES_H */
