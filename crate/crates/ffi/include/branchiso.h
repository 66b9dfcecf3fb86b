#ifndef BRANCHISO_H
#define BRANCHISO_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Status codes returned by every fallible call.
 */
typedef enum BiStatus {
  BiStatus_Ok = 0,
  BiStatus_NullPointer = 1,
  BiStatus_InvalidUtf8 = 2,
  BiStatus_Parse = 3,
  BiStatus_Precision = 4,
  BiStatus_NotEquisingular = 5,
  BiStatus_Construction = 6,
  BiStatus_Numeric = 7,
  BiStatus_InvalidArgument = 8,
  BiStatus_BufferTooSmall = 9,
  BiStatus_Panic = 10,
} BiStatus;

/*
 A parsed branch.
 */
typedef struct BiBranch BiBranch;

/*
 A resolved branch with its dual graph.
 */
typedef struct BiResolution BiResolution;

/*
 Classical invariants of a branch.
 */
typedef struct BiInvariants {
  uint32_t multiplicity;
  uint64_t delta;
  uint64_t milnor;
} BiInvariants;

/*
 Outcome of an isotopy check.
 */
typedef struct BiIsotopyResult {
  size_t stages;
  double max_distance;
  bool pass;
} BiIsotopyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or NULL. Valid until the next
 call on the same thread.
 */
const char *bi_last_error(void);

/*
 Release a string returned by this library.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void bi_string_free(char *s);

/*
 Parse a branch in the `x = ...` / `y = ...` text format and declare it
 exact up to `precision` (0 keeps the parsed precision).

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BiStatus bi_branch_parse(const char *text, uint32_t precision, struct BiBranch **out);

/*
 # Safety
 `b` must come from [`bi_branch_parse`] and not be freed twice.
 */
void bi_branch_free(struct BiBranch *b);

/*
 # Safety
 `b` must be a live branch handle and `out` a valid pointer.
 */
enum BiStatus bi_branch_resolve(const struct BiBranch *b, struct BiResolution **out);

/*
 # Safety
 `r` must come from [`bi_branch_resolve`] and not be freed twice.
 */
void bi_resolution_free(struct BiResolution *r);

/*
 Number of blowups, or 0 for a NULL handle.

 # Safety
 `r` must be NULL or a live resolution handle.
 */
size_t bi_resolution_length(const struct BiResolution *r);

/*
 Copy the multiplicity sequence into `buf`; `*len` receives its length
 even when the buffer is too small.

 # Safety
 `buf` must hold `cap` entries and `len` be a valid pointer.
 */
enum BiStatus bi_resolution_multiplicities(const struct BiResolution *r,
                                           uint32_t *buf,
                                           size_t cap,
                                           size_t *len);

/*
 Copy the self-intersections of `E1..Er` into `buf`.

 # Safety
 As for [`bi_resolution_multiplicities`].
 */
enum BiStatus bi_resolution_weights(const struct BiResolution *r,
                                    int64_t *buf,
                                    size_t cap,
                                    size_t *len);

/*
 Dual graph in DOT format; release with [`bi_string_free`].

 # Safety
 `r` must be a live resolution handle and `out` a valid pointer.
 */
enum BiStatus bi_resolution_dot(const struct BiResolution *r, char **out);

/*
 # Safety
 `b` must be a live branch handle and `out` a valid pointer.
 */
enum BiStatus bi_branch_invariants(const struct BiBranch *b, struct BiInvariants *out);

/*
 Implicit equation as `f = ...`; release with [`bi_string_free`].

 # Safety
 `b` must be a live branch handle and `out` a valid pointer.
 */
enum BiStatus bi_branch_implicitize(const struct BiBranch *b, char **out);

/*
 # Safety
 `a`, `b` must be live branch handles and `out` a valid pointer.
 */
enum BiStatus bi_equisingular(const struct BiBranch *a, const struct BiBranch *b, bool *out);

/*
 Build an isotopy from `a` to `b` and verify it on `samples` points of `a`
 within `radius`, integrating with step `step`.

 # Safety
 `a`, `b` must be live branch handles and `out` a valid pointer.
 */
enum BiStatus bi_isotopy_verify(const struct BiBranch *a,
                                const struct BiBranch *b,
                                size_t samples,
                                double radius,
                                double step,
                                double tol,
                                struct BiIsotopyResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRANCHISO_H */
