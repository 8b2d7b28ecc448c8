#ifndef SEMIGAME_H
#define SEMIGAME_H

/* Generated by cbindgen from the semigame-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define SG_OK 0

#define SG_VERIFICATION_FAILURE 1

#define SG_INPUT_ERROR 2

#define SG_INTERNAL_ERROR 3

/**
 * Opaque parsed certificate.
 */
typedef struct sg_certificate sg_certificate;

/**
 * Opaque compiled game together with its compilation index.
 */
typedef struct sg_game sg_game;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library, as a static string (do not free).
 */
const char *sg_version(void);

/**
 * Copy of the last error message on this thread, or NULL if none.
 * Free with `sg_string_free`.
 */
char *sg_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a `semigame` function and not freed yet.
 */
void sg_string_free(char *s);

/**
 * Parses certificate text into a handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid to
 * write one pointer.
 */
int sg_certificate_parse(const char *text, sg_certificate **out);

/**
 * # Safety
 * `cert` must be a live handle from `sg_certificate_parse` (or NULL).
 */
void sg_certificate_free(sg_certificate *cert);

/**
 * Hex SHA-256 digest of the certificate's canonical text.
 *
 * # Safety
 * `cert` must be a live handle.
 */
char *sg_certificate_digest(const sg_certificate *cert);

/**
 * Compiles a certificate. `integer_mode != 0` selects the all-integer
 * construction; `allow_undecided != 0` accepts an UNDECIDED witness.
 *
 * # Safety
 * `cert` must be a live handle; `out` must be valid to write one pointer.
 */
int sg_compile(const sg_certificate *cert, int integer_mode, int allow_undecided, sg_game **out);

/**
 * # Safety
 * `game` must be a live handle from `sg_compile` (or NULL).
 */
void sg_game_free(sg_game *game);

/**
 * Number of players of a compiled game (0 on a NULL handle).
 *
 * # Safety
 * `game` must be a live handle or NULL.
 */
unsigned int sg_game_player_count(const sg_game *game);

/**
 * Serializes the game to its JSON schema.
 *
 * # Safety
 * `game` must be a live handle.
 */
char *sg_game_to_json(const sg_game *game);

/**
 * Checks one point (comma-separated rationals; payoff-mode points live in
 * `[-D, D]^n`). Writes a JSON verdict to `out_json`. Returns 0 when the
 * game-side verdict agrees with membership, 1 when it disagrees, 2 on bad
 * input.
 *
 * # Safety
 * `game` must be a live handle; `point_csv` a valid string; `out_json`
 * valid to write one pointer.
 */
int sg_check_point(const sg_game *game, const char *point_csv, char **out_json);

/**
 * Grid projection over `{0, 1/r, ..., 1}^n`. Writes the JSON report to
 * `out_json`; returns 0 when there are no disagreements, 1 otherwise.
 *
 * # Safety
 * `game` must be a live handle; `out_json` valid to write one pointer.
 */
int sg_project_grid(const sg_game *game, unsigned int resolution, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMIGAME_H */
