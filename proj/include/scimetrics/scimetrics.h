/* C interface to the scimetrics engine. Every call returns a status code;
 * on failure scim_last_error() describes the problem for the calling thread.
 * Strings handed out through `char **out` belong to the caller and are
 * released with scim_string_free. */
#ifndef SCIMETRICS_H
#define SCIMETRICS_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SCIM_BUILDING_LIBRARY)
#define SCIM_API __attribute__((visibility("default")))
#else
#define SCIM_API
#endif

typedef enum scim_status {
  SCIM_OK = 0,
  SCIM_ERR_INVALID_ARGUMENT = 1,
  SCIM_ERR_NOT_FOUND = 2,
  SCIM_ERR_UNPROCESSABLE = 3,
  SCIM_ERR_PARSE = 4,
  SCIM_ERR_IO = 5,
  SCIM_ERR_UNAVAILABLE = 6,
  SCIM_ERR_INTERNAL = 7
} scim_status;

typedef struct scim_session scim_session;

SCIM_API const char *scim_version(void);
SCIM_API const char *scim_last_error(void);
SCIM_API const char *scim_status_name(scim_status status);
SCIM_API void scim_string_free(char *s);

/* Generator. `config_json` may be NULL or "{}" for defaults; unknown keys
 * are rejected. Writes the ingestion files plus truth.json into out_dir. */
SCIM_API scim_status scim_default_config(char **out_json);
SCIM_API scim_status scim_generate(const char *config_json, const char *out_dir);

/* Loads the ingestion files in `dir`. `snapshot_date` (YYYY-MM-DD) may be
 * NULL to use the latest observed date. */
SCIM_API scim_status scim_session_open(const char *dir, const char *snapshot_date,
                                       scim_session **out);
SCIM_API void scim_session_close(scim_session *session);

/* Writes the loaded corpus back out in canonical form. */
SCIM_API scim_status scim_export_corpus(const scim_session *session, const char *out_dir);

/* Runs an operation on a JSON request object (NULL means {}). Operations:
 * summary, validate, load_report, metrics, fit, calibrate, rank, correlate,
 * reliability, factor, oa_advantage, report. `out_content_type` may be NULL;
 * it receives "application/json" or "text/csv". */
SCIM_API scim_status scim_run(const scim_session *session, const char *op,
                              const char *request_json, char **out,
                              char **out_content_type);

/* Named forms of scim_run returning JSON. */
SCIM_API scim_status scim_summary(const scim_session *session, char **out_json);
SCIM_API scim_status scim_validate(const scim_session *session, char **out_json);
SCIM_API scim_status scim_metrics(const scim_session *session, const char *request_json,
                                  char **out_json);
SCIM_API scim_status scim_fit(const scim_session *session, const char *request_json,
                              char **out_json);
SCIM_API scim_status scim_calibrate(const scim_session *session, const char *request_json,
                                    char **out_json);
SCIM_API scim_status scim_rank(const scim_session *session, const char *request_json,
                               char **out_json);
SCIM_API scim_status scim_correlate(const scim_session *session, const char *request_json,
                                    char **out_json);
SCIM_API scim_status scim_reliability(const scim_session *session, const char *request_json,
                                      char **out_json);
SCIM_API scim_status scim_factor(const scim_session *session, const char *request_json,
                                 char **out_json);
SCIM_API scim_status scim_oa_advantage(const scim_session *session, const char *request_json,
                                       char **out_json);

/* Run summary as JSON and as readable text; either output may be NULL. */
SCIM_API scim_status scim_report(const scim_session *session, const char *request_json,
                                 char **out_json, char **out_text);

/* Serves the HTTP API until the process is stopped. `static_dir` may be
 * NULL for the built-in placeholder page. */
SCIM_API scim_status scim_serve(const scim_session *session, const char *host, int port,
                                const char *static_dir);

#ifdef __cplusplus
}
#endif

#endif
