#ifndef LATCOMM_H
#define LATCOMM_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the CLI uses them as process exit codes. */
#define LATCOMM_OK 0
#define LATCOMM_VERDICT_FAIL 1
#define LATCOMM_BAD_CONFIG 2
#define LATCOMM_BUDGET_EXCEEDED 3
#define LATCOMM_INTERNAL_ERROR 4

typedef struct latcomm_report latcomm_report;

/* Library version string, static storage. */
const char* latcomm_version(void);

/* Runs one experiment described by a JSON config:
 *   {"experiment": "...", "params": {...}, "seed": 0, "format": "json"}
 * Returns LATCOMM_OK or LATCOMM_VERDICT_FAIL with *out set to a report that
 * must be released with latcomm_report_free.  On any other status *out is
 * NULL and latcomm_last_error carries the message. */
int latcomm_run(const char* config_json, latcomm_report** out);

/* Serialized views; the pointers stay valid until the report is freed. */
const char* latcomm_report_json(const latcomm_report* r);
const char* latcomm_report_csv(const latcomm_report* r);

/* 1 when every verdict in the report passed, else 0. */
int latcomm_report_passed(const latcomm_report* r);

void latcomm_report_free(latcomm_report* r);

/* Message of the most recent failure on the calling thread; "" otherwise. */
const char* latcomm_last_error(void);

/* Caps worker threads for subsequent runs; 0 restores hardware default. */
void latcomm_set_threads(int n);

#ifdef __cplusplus
}
#endif

#endif /* LATCOMM_H */
