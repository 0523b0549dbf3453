#ifndef BRITTON_H
#define BRITTON_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BrittonStatus {
  BRITTON_STATUS_OK = 0,
  BRITTON_STATUS_NULL_POINTER = 1,
  BRITTON_STATUS_INVALID_UTF8 = 2,
  BRITTON_STATUS_PARSE = 3,
  BRITTON_STATUS_UNKNOWN_GROUP = 4,
  BRITTON_STATUS_UNKNOWN_SUBGROUP = 5,
  BRITTON_STATUS_ALPHABET = 6,
  BRITTON_STATUS_CONFIG = 7,
  BRITTON_STATUS_HOM = 8,
  BRITTON_STATUS_BUDGET = 9,
  BRITTON_STATUS_PANIC = 10,
  BRITTON_STATUS_OTHER = 11,
} BrittonStatus;

/**
 * Opaque solver handle.
 */
typedef struct BrittonTower BrittonTower;

/**
 * Builds the solvers. Free with [`britton_tower_free`]. Returns null on failure.
 */
struct BrittonTower *britton_tower_new(void);

/**
 * # Safety
 * `tower` must come from [`britton_tower_new`] and not be used afterwards.
 */
void britton_tower_free(struct BrittonTower *tower);

/**
 * Sets `*out` to whether `word` is trivial in `group` (`h0` .. `g`).
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum BrittonStatus britton_wp_is_trivial(const struct BrittonTower *tower,
                                         const char *group,
                                         const char *word,
                                         bool *out);

/**
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum BrittonStatus britton_wp_equal(const struct BrittonTower *tower,
                                    const char *group,
                                    const char *lhs,
                                    const char *rhs,
                                    bool *out);

/**
 * Writes a newly allocated reduced word to `*out`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum BrittonStatus britton_normal_form(const struct BrittonTower *tower,
                                       const char *group,
                                       const char *word,
                                       char **out);

/**
 * Membership of `word` in a named cyclic subgroup such as `<s^3>` or `u`,
 * decided in the subgroup's own level. On membership `*exponent` receives
 * the decimal exponent, otherwise null.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum BrittonStatus britton_subgroup_member(const struct BrittonTower *tower,
                                           const char *subgroup,
                                           const char *word,
                                           bool *member,
                                           char **exponent);

/**
 * Runs the non-Hopfian certificate for the built-in map. `*report` gets
 * the certificate as JSON when non-null.
 *
 * # Safety
 * `tower` and `pass` must be valid; `report` may be null.
 */
enum BrittonStatus britton_certify_nonhopfian(const struct BrittonTower *tower,
                                              bool *pass,
                                              char **report);

/**
 * The message for the last failed call on this thread, or null. Valid
 * until the next call on this thread.
 */
const char *britton_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void britton_string_free(char *s);

/**
 * Library version, static storage.
 */
const char *britton_version(void);

#endif  /* BRITTON_H */
