#ifndef BWO_H
#define BWO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BwoPairClass {
  BWO_PAIR_CLASS_HOMEOMORPHIC = 0,
  BWO_PAIR_CLASS_HOMOTOPY_EQUIVALENT_ONLY = 1,
  BWO_PAIR_CLASS_INEQUIVALENT = 2,
} BwoPairClass;

typedef enum BwoStatus {
  BWO_STATUS_OK = 0,
  BWO_STATUS_NULL_POINTER = 1,
  BWO_STATUS_INVALID_UTF8 = 2,
  BWO_STATUS_INVALID_INPUT = 3,
  BWO_STATUS_VERIFICATION_FAILED = 4,
  BWO_STATUS_PANIC = 5,
} BwoStatus;

/**
 * Opaque book handle.
 */
typedef struct BwoBook BwoBook;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a primitive book with `pages` pages of genus `genus`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BwoStatus bwo_book_new(size_t pages, size_t genus, struct BwoBook **out);

/**
 * Parses a book from its JSON form.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum BwoStatus bwo_book_from_json(const char *json, struct BwoBook **out);

/**
 * # Safety
 * `book` must be a live handle and `out` a valid pointer.
 */
enum BwoStatus bwo_book_to_json(const struct BwoBook *book, char **out);

/**
 * Releases a book handle. Null is ignored.
 *
 * # Safety
 * `book` must come from this library and not be used afterwards.
 */
void bwo_book_free(struct BwoBook *book);

/**
 * Number of window components.
 *
 * # Safety
 * `book` must be a live handle and `out` a valid pointer.
 */
enum BwoStatus bwo_book_window_count(const struct BwoBook *book, size_t *out);

/**
 * Relabels the attachment order through `perm[0..len]` (1-based images).
 *
 * # Safety
 * `perm` must point to `len` values; `book` must be live; `out` valid.
 */
enum BwoStatus bwo_book_shuffle(const struct BwoBook *book,
                                const size_t *perm,
                                size_t len,
                                struct BwoBook **out);

/**
 * Toggles the flip mark of page `page`.
 *
 * # Safety
 * `book` must be live and `out` valid.
 */
enum BwoStatus bwo_book_flip(const struct BwoBook *book, size_t page, struct BwoBook **out);

/**
 * # Safety
 * `a` and `b` must be live handles and `out` valid.
 */
enum BwoStatus bwo_book_classify_pair(const struct BwoBook *a,
                                      const struct BwoBook *b,
                                      enum BwoPairClass *out);

/**
 * Normal form of `word` in the group of a uniform book.
 *
 * # Safety
 * `word` must be a nul-terminated string and `out` valid.
 */
enum BwoStatus bwo_reduce_word(size_t pages, size_t genus, const char *word, char **out);

/**
 * Runs the twisted-book pipeline and returns the JSON report in `out`.
 * Returns `VerificationFailed` (with the report still set) when it does not pass.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BwoStatus bwo_verify_counterexample(size_t pages,
                                         size_t genus,
                                         size_t iters,
                                         uint64_t seed,
                                         char **out);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next call into this library.
 */
const char *bwo_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void bwo_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BWO_H */
