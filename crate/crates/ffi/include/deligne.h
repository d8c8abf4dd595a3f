#ifndef DELIGNE_H
#define DELIGNE_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum DlStatus {
  DL_STATUS_OK = 0,
  DL_STATUS_NULL_POINTER = 1,
  DL_STATUS_INVALID_UTF8 = 2,
  DL_STATUS_PARSE = 3,
  DL_STATUS_TYPE_MISMATCH = 4,
  /**
   * A mathematical error such as a pole at a specialization.
   */
  DL_STATUS_MATH = 5,
  DL_STATUS_PANIC = 6,
} DlStatus;

typedef struct DlMorphism DlMorphism;

typedef struct DlObject DlObject;

typedef struct DlWObject DlWObject;

typedef struct DlYObject DlYObject;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next call on this thread.
 */
const char *dl_last_error(void);

/**
 * # Safety
 * `s` is NULL or a string returned by this library and not yet freed.
 */
void dl_string_free(char *s);

/**
 * Hex hash of the structure-constant rules.
 *
 * # Safety
 * `out` is a valid pointer.
 */
enum DlStatus dl_cache_version(char **out);

/**
 * Runs the command line with `argv[0..argc]` (without the program name).
 * The report is written to `out_stdout`, the exit code (0, 1 or 2) to
 * `out_code`; usage errors leave their message in `out_stdout` as well.
 *
 * # Safety
 * `argv` points to `argc` valid C strings; `out_stdout` and `out_code` are valid.
 */
enum DlStatus dl_run(const char *const *argv, uintptr_t argc, char **out_stdout, int *out_code);

/**
 * # Safety
 * `json` is a valid C string; `out` is a valid pointer.
 */
enum DlStatus dl_morphism_from_json(const char *json, struct DlMorphism **out);

/**
 * # Safety
 * `f` is a live handle; `out` is a valid pointer.
 */
enum DlStatus dl_morphism_to_json(const struct DlMorphism *f, char **out);

/**
 * `g ∘ f`.
 *
 * # Safety
 * `f`, `g` are live handles; `out` is a valid pointer.
 */
enum DlStatus dl_morphism_compose(const struct DlMorphism *f,
                                  const struct DlMorphism *g,
                                  struct DlMorphism **out);

/**
 * `f ⊗ g`.
 *
 * # Safety
 * `f`, `g` are live handles; `out` is a valid pointer.
 */
enum DlStatus dl_morphism_tensor(const struct DlMorphism *f,
                                 const struct DlMorphism *g,
                                 struct DlMorphism **out);

/**
 * # Safety
 * `f` is NULL or a handle from this library not yet freed.
 */
void dl_morphism_free(struct DlMorphism *f);

/**
 * `[sizes[0]] ⊕ ... ⊕ [sizes[len - 1]]`.
 *
 * # Safety
 * `sizes` points to `len` values (or is NULL with `len == 0`); `out` is valid.
 */
enum DlStatus dl_object_from_sizes(const uintptr_t *sizes, uintptr_t len, struct DlObject **out);

/**
 * # Safety
 * `json` is a valid C string; `out` is a valid pointer.
 */
enum DlStatus dl_object_from_json(const char *json, struct DlObject **out);

/**
 * Gram determinant of `End(X)` as a polynomial string in `T`.
 *
 * # Safety
 * `x` is a live handle; `out` is a valid pointer.
 */
enum DlStatus dl_object_gram_det(const struct DlObject *x, char **out);

/**
 * The identity of `X`.
 *
 * # Safety
 * `x` is a live handle; `out` is a valid pointer.
 */
enum DlStatus dl_object_identity(const struct DlObject *x, struct DlMorphism **out);

/**
 * # Safety
 * `x` is NULL or a handle from this library not yet freed.
 */
void dl_object_free(struct DlObject *x);

/**
 * `ev_a(X)`; `a` is a rational function string such as `a1 + 1/2`.
 *
 * # Safety
 * `a` is a valid C string, `x` a live handle, `out` a valid pointer.
 */
enum DlStatus dl_ev(const char *a, const struct DlObject *x, struct DlYObject **out);

/**
 * # Safety
 * `json` is a valid C string; `out` is a valid pointer.
 */
enum DlStatus dl_yobject_from_json(const char *json, struct DlYObject **out);

/**
 * # Safety
 * `y` is a live handle; `out` is a valid pointer.
 */
enum DlStatus dl_yobject_to_json(const struct DlYObject *y, char **out);

/**
 * Writes whether the defining relation holds exactly.
 *
 * # Safety
 * `y` is a live handle; `holds` is a valid pointer.
 */
enum DlStatus dl_yobject_check_relation(const struct DlYObject *y, bool *holds);

/**
 * # Safety
 * `y` is NULL or a handle from this library not yet freed.
 */
void dl_yobject_free(struct DlYObject *y);

/**
 * # Safety
 * `json` is a valid C string; `out` is a valid pointer.
 */
enum DlStatus dl_wobject_from_json(const char *json, struct DlWObject **out);

/**
 * Writes whether both wreath conditions hold.
 *
 * # Safety
 * `w` is a live handle; `holds` is a valid pointer.
 */
enum DlStatus dl_wobject_check(const struct DlWObject *w, bool *holds);

/**
 * # Safety
 * `w` is NULL or a handle from this library not yet freed.
 */
void dl_wobject_free(struct DlWObject *w);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELIGNE_H */
