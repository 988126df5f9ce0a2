#ifndef MIPT_H
#define MIPT_H

/* C interface to the shallow-circuit measurement-transition simulator.
 *
 * All functions are non-throwing. Functions returning int use the status
 * codes below; handle-creating functions return NULL on failure. The
 * library is thread-compatible: distinct handles may be used from distinct
 * threads, a single handle must not be shared without external locking.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  MIPT_OK = 0,
  MIPT_ERR_CONFIG = 2,  /* malformed configuration; no output written */
  MIPT_ERR_FIT = 3,     /* experiment ran but a fit failed */
  MIPT_ERR_INVALID = 4  /* bad handle or argument */
};

/* ---- Stabilizer tableau (opaque) ------------------------------------ */

typedef struct mipt_tableau mipt_tableau;

/* Creates an n-site |+>^n stabilizer state over prime q (q >= 2). */
mipt_tableau* mipt_tableau_create(uint32_t q, size_t n_sites);
void mipt_tableau_destroy(mipt_tableau* t);

/* Controlled-phase gate CP^w between sites i and j, 1 <= w < q. */
int mipt_tableau_apply_cp(mipt_tableau* t, size_t i, size_t j, uint32_t w);

/* Projective measurement of X^a Z^b at `site`. Returns 1 if the outcome
 * was random (state updated), 0 if deterministic (state unchanged), or a
 * negative of a MIPT_ERR_* code. */
int mipt_tableau_measure(mipt_tableau* t, size_t site, uint32_t a, uint32_t b);

/* Entanglement entropy in dits of the given site subset; negative of a
 * MIPT_ERR_* code on bad input. */
long mipt_tableau_entropy(const mipt_tableau* t, const size_t* sites,
                          size_t n_sites);

/* ---- Stat-mech closed forms ----------------------------------------- */

/* Effective Ising couplings of the replica stat-mech model at parameter q.
 * Either output pointer may be NULL. Returns MIPT_OK or MIPT_ERR_INVALID
 * (q < 2). */
int mipt_couplings(double q, double* j_vert, double* j_horiz);

/* ---- Experiment harness --------------------------------------------- */

/* Runs a full experiment described by flat "key=value" config text (see
 * README for keys). Output files are written only on success. Returns
 * MIPT_OK, MIPT_ERR_CONFIG or MIPT_ERR_FIT; on failure a diagnostic is
 * copied into errbuf (always NUL-terminated when errbuf_len > 0). */
int mipt_run_config(const char* config_text, char* errbuf, size_t errbuf_len);

const char* mipt_version(void);

#ifdef __cplusplus
}
#endif

#endif /* MIPT_H */
