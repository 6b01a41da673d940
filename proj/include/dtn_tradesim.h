/* C interface to the DTN routing trade-study simulator. */
#ifndef DTN_TRADESIM_H
#define DTN_TRADESIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DTN_TRADESIM_BUILD)
#    define DTN_API __declspec(dllexport)
#  else
#    define DTN_API __declspec(dllimport)
#  endif
#else
#  define DTN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum dtn_status {
  DTN_OK = 0,
  DTN_ERR_CONFIG = 1,
  DTN_ERR_SIMULATION = 2,
  DTN_ERR_IO = 3,
  DTN_ERR_USAGE = 4
} dtn_status;

typedef enum dtn_protocol {
  DTN_BUNDLE_PROTOCOL = 0,
  DTN_DISTANCE_DIJKSTRA = 1,
  DTN_QUALITY_DIJKSTRA = 2
} dtn_protocol;

typedef enum dtn_metric {
  DTN_METRIC_PERCENT_ERROR = 0,
  DTN_METRIC_TRANSMISSION_TIME = 1
} dtn_metric;

typedef struct dtn_config dtn_config;
typedef struct dtn_study dtn_study;

DTN_API const char* dtn_version(void);

/* Message for the last failed call on this thread, "" if none. */
DTN_API const char* dtn_last_error(void);

DTN_API dtn_status dtn_config_create(dtn_config** out);
DTN_API void dtn_config_destroy(dtn_config* config);
/* Applies settings from a key=value file on top of the current values. */
DTN_API dtn_status dtn_config_load_file(dtn_config* config, const char* path);
DTN_API dtn_status dtn_config_set(dtn_config* config, const char* key, const char* value);
DTN_API dtn_status dtn_config_validate(const dtn_config* config);
/* Copies the canonical key=value listing into buf (NUL-terminated, truncated
   to cap). *needed receives the full length including the terminator. */
DTN_API dtn_status dtn_config_describe(const dtn_config* config, char* buf, size_t cap,
                                       size_t* needed);

DTN_API dtn_status dtn_study_run(const dtn_config* config, dtn_study** out);
DTN_API void dtn_study_destroy(dtn_study* study);
/* Writes report files. out_dir may be NULL to use the configured directory. */
DTN_API dtn_status dtn_study_write(const dtn_study* study, const char* out_dir);

DTN_API size_t dtn_study_run_count(const dtn_study* study);
DTN_API size_t dtn_study_warning_count(const dtn_study* study);
DTN_API const char* dtn_study_warning(const dtn_study* study, size_t index);
DTN_API dtn_status dtn_study_metric_mean(const dtn_study* study, dtn_protocol protocol,
                                         dtn_metric metric, double* out);
DTN_API dtn_status dtn_study_mavf(const dtn_study* study, dtn_protocol protocol,
                                  int corrected, double* out);
/* Fills out[0..2] with protocols from best to worst. */
DTN_API dtn_status dtn_study_ranking(const dtn_study* study, int corrected,
                                     dtn_protocol out[3]);

#ifdef __cplusplus
}
#endif

#endif /* DTN_TRADESIM_H */
