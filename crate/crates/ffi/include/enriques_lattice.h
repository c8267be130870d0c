#ifndef ENRIQUES_LATTICE_H
#define ENRIQUES_LATTICE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `EL_STATUS_OK` is zero.
 */
typedef enum ElStatus {
  EL_STATUS_OK = 0,
  EL_STATUS_NULL_POINTER = 1,
  EL_STATUS_INVALID_ARGUMENT = 2,
  EL_STATUS_DIMENSION_MISMATCH = 3,
  EL_STATUS_NOT_ISOMETRY = 4,
  EL_STATUS_OUTSIDE_POSITIVE_CONE = 5,
  EL_STATUS_NOT_IN_G0 = 6,
  EL_STATUS_OVERFLOW = 7,
  EL_STATUS_BUFFER_TOO_SMALL = 8,
  EL_STATUS_INTERNAL = 9,
} ElStatus;

typedef struct ElE10 ElE10;

typedef struct ElIsometry ElIsometry;

typedef struct ElLattice ElLattice;

/**
 * Copies the last error message of this thread into `buf` (NUL
 * terminated, truncated to `cap`) and returns its full length without the
 * terminator. Returns 0 when there is no error.
 *
 * # Safety
 * `buf` must be null or point to `cap` writable bytes.
 */
size_t el_last_error_message(char *buf, size_t cap);

/**
 * Static NUL-terminated version string.
 */
const char *el_version(void);

/**
 * Lattice from an `n × n` symmetric nondegenerate Gram matrix.
 *
 * # Safety
 * `gram` must point to `n * n` readable values and `out` must be writable.
 */
enum ElStatus el_lattice_new(const int64_t *gram, size_t n, struct ElLattice **out);

/**
 * Root lattice of type `family` (`'A'`, `'D'` or `'E'`) and `rank`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ElStatus el_lattice_from_ade(char family, size_t rank, struct ElLattice **out);

/**
 * # Safety
 * `l` must be null or a handle from this library that was not yet freed.
 */
void el_lattice_free(struct ElLattice *l);

/**
 * # Safety
 * `l` must be a live lattice handle.
 */
size_t el_lattice_rank(const struct ElLattice *l);

/**
 * Determinant, parity and signature `(positive, negative)`.
 *
 * # Safety
 * `l` must be a live handle; every output pointer must be writable.
 */
enum ElStatus el_lattice_invariants(const struct ElLattice *l,
                                    int64_t *determinant,
                                    bool *is_even,
                                    size_t *positive,
                                    size_t *negative);

/**
 * Invariant factors `d_1 | d_2 | …` of the discriminant group. `len`
 * receives the number of factors even when `cap` is too small.
 *
 * # Safety
 * `l` must be a live handle, `out` must have `cap` writable slots and
 * `len` must be null or writable.
 */
enum ElStatus el_lattice_discriminant_factors(const struct ElLattice *l,
                                              int64_t *out,
                                              size_t cap,
                                              size_t *len);

/**
 * Isometry of `l` from an `n × n` row-major matrix acting on columns.
 * Fails with `NotIsometry` when the form is not preserved.
 *
 * # Safety
 * `l` must be a live handle, `matrix` must hold `n * n` values and `out`
 * must be writable.
 */
enum ElStatus el_isometry_new(const struct ElLattice *l,
                              const int64_t *matrix,
                              size_t n,
                              struct ElIsometry **out);

/**
 * # Safety
 * `g` must be null or a handle from this library that was not yet freed.
 */
void el_isometry_free(struct ElIsometry *g);

/**
 * # Safety
 * `g` must be a live isometry handle.
 */
size_t el_isometry_rank(const struct ElIsometry *g);

/**
 * Copies the matrix row-major into `out` (`rank²` entries).
 *
 * # Safety
 * `g` must be a live handle and `out` must have `cap` writable slots.
 */
enum ElStatus el_isometry_matrix(const struct ElIsometry *g, int64_t *out, size_t cap);

/**
 * `a ∘ b` as a new handle.
 *
 * # Safety
 * `a`, `b` must be live handles of equal rank and `out` writable.
 */
enum ElStatus el_isometry_compose(const struct ElIsometry *a,
                                  const struct ElIsometry *b,
                                  struct ElIsometry **out);

/**
 * The lattice `E10` in the basis of its fundamental roots.
 *
 * # Safety
 * `out` must be writable.
 */
enum ElStatus el_e10_new(struct ElE10 **out);

/**
 * # Safety
 * `e` must be null or a handle from this library that was not yet freed.
 */
void el_e10_free(struct ElE10 *e);

/**
 * Reduces `x` (10 entries) into the chamber. `reduced` receives 10
 * entries; the reflection word goes to `word` with its length in
 * `word_len`.
 *
 * # Safety
 * `e` must be a live handle, `x` must hold 10 values, `reduced` must have
 * 10 writable slots, `word` must have `word_cap` writable slots and
 * `word_len` must be null or writable.
 */
enum ElStatus el_e10_chamber_reduce(const struct ElE10 *e,
                                    const int64_t *x,
                                    int64_t *reduced,
                                    size_t *word,
                                    size_t word_cap,
                                    size_t *word_len);

/**
 * The involution `σ_U` of the hyperbolic plane spanned by `f1`, `f2`
 * (10 entries each).
 *
 * # Safety
 * `e` must be a live handle, `f1`, `f2` must hold 10 values and `out`
 * must be writable.
 */
enum ElStatus el_e10_sigma_u(const struct ElE10 *e,
                             const int64_t *f1,
                             const int64_t *f2,
                             struct ElIsometry **out);

/**
 * Writes whether `g` lies in the 2-congruence subgroup `G0`.
 *
 * # Safety
 * `e`, `g` must be live handles and `result` writable.
 */
enum ElStatus el_e10_is_in_g0(const struct ElE10 *e, const struct ElIsometry *g, bool *result);

/**
 * Number of nonzero isotropic vectors of `E10 ⊗ F2`.
 *
 * # Safety
 * `e` must be a live handle and `count` writable.
 */
enum ElStatus el_e10_f2_isotropic_count(const struct ElE10 *e, size_t *count);

/**
 * Order of the local class group of the rational double point of the
 * given type.
 *
 * # Safety
 * `order` must be writable.
 */
enum ElStatus el_class_group_order(char family, size_t rank, int64_t *order);

#endif  /* ENRIQUES_LATTICE_H */
