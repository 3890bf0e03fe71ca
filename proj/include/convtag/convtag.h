#ifndef CONVTAG_CONVTAG_H
#define CONVTAG_CONVTAG_H

/* Stable C interface to the convtag library. Every call returns a status;
 * on failure convtag_last_error() holds a message for the calling thread. */

#include <stddef.h>

#if defined(CONVTAG_BUILDING_LIBRARY)
#define CONVTAG_API __attribute__((visibility("default")))
#else
#define CONVTAG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum convtag_status {
  CONVTAG_OK = 0,
  CONVTAG_ERR_INVALID_ARGUMENT = 1,
  CONVTAG_ERR_IO = 2,
  CONVTAG_ERR_PARSE = 3,
  CONVTAG_ERR_SCHEMA = 4,
  CONVTAG_ERR_STATE = 5,
  CONVTAG_ERR_INTERNAL = 6
} convtag_status;

typedef struct convtag_config convtag_config;
typedef struct convtag_regex convtag_regex;
typedef struct convtag_ruleset convtag_ruleset;

CONVTAG_API const char* convtag_version(void);
/* Empty string when the last call on this thread succeeded. */
CONVTAG_API const char* convtag_last_error(void);
CONVTAG_API const char* convtag_status_name(convtag_status status);

/* Configuration: defaults, or loaded from a `[section] key = value` file. */
CONVTAG_API convtag_status convtag_config_create(convtag_config** out);
CONVTAG_API convtag_status convtag_config_load(const char* path, convtag_config** out);
CONVTAG_API convtag_status convtag_config_set(convtag_config* cfg, const char* key, const char* value);
/* Copies the value (NUL-terminated, truncated to `size`) and stores its full
 * length in *length when non-null. */
CONVTAG_API convtag_status convtag_config_get(const convtag_config* cfg, const char* key, char* buffer, size_t size,
                                              size_t* length);
CONVTAG_API void convtag_config_destroy(convtag_config* cfg);

/* Runs a pipeline subcommand. Summary text goes to `sink` when given. */
typedef void (*convtag_write_fn)(const char* text, size_t length, void* user);
CONVTAG_API convtag_status convtag_run(const char* subcommand, const convtag_config* cfg, convtag_write_fn sink,
                                       void* user);

/* Word error rate of two whitespace-tokenized strings. */
CONVTAG_API convtag_status convtag_wer(const char* reference, const char* hypothesis, double* out);

CONVTAG_API convtag_status convtag_regex_compile(const char* pattern, convtag_regex** out);
CONVTAG_API convtag_status convtag_regex_state_count(const convtag_regex* re, size_t* out);
CONVTAG_API convtag_status convtag_regex_matches(const convtag_regex* re, const char* text, int* out);
CONVTAG_API void convtag_regex_destroy(convtag_regex* re);

/* Rules file: `name<TAB>severity<TAB>expression`. `keywords` is a
 * comma-separated list of known identifiers. */
CONVTAG_API convtag_status convtag_ruleset_load(const char* path, const char* keywords, convtag_ruleset** out);
/* `tags` is a comma-separated tag set for one call. Writes the highest
 * failed severity, or 0 when every rule holds. */
CONVTAG_API convtag_status convtag_ruleset_assess(const convtag_ruleset* rules, const char* tags, int* max_severity);
CONVTAG_API void convtag_ruleset_destroy(convtag_ruleset* rules);

#ifdef __cplusplus
}
#endif

#endif
