#ifndef HFHASH_H
#define HFHASH_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Digest size in bytes.
 */
#define HF_DIGEST_LEN 32

/**
 * Size of the buffer `hf_hash_hex` needs, terminator included.
 */
#define HF_HEX_LEN 65

typedef enum HfStatus {
  HF_STATUS_OK = 0,
  HF_STATUS_NULL_POINTER = 1,
  HF_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The hasher was already finalized.
   */
  HF_STATUS_FINALIZED = 3,
  HF_STATUS_MESSAGE_TOO_LONG = 4,
  /**
   * The polynomial text did not parse.
   */
  HF_STATUS_PARSE = 5,
  HF_STATUS_INTERNAL = 6,
  HF_STATUS_BUFFER_TOO_SMALL = 7,
} HfStatus;

/**
 * Incremental hasher.
 */
typedef struct HfHasher HfHasher;

/**
 * A parsed polynomial system.
 */
typedef struct HfSystem HfSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *hf_last_error(void);

/**
 * Creates a hasher using the shipped system. `rounds` is 32, 48 or 64.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle to.
 */
enum HfStatus hf_hasher_new(uint32_t rounds, struct HfHasher **out);

/**
 * Creates a hasher over `system`. The system may be freed afterwards.
 *
 * # Safety
 * `system` must come from this library; `out` must be writable.
 */
enum HfStatus hf_hasher_new_with_system(const struct HfSystem *system,
                                        uint32_t rounds,
                                        struct HfHasher **out);

/**
 * # Safety
 * `hasher` must come from `hf_hasher_new*`; `data` must point to `len` bytes.
 */
enum HfStatus hf_hasher_update(struct HfHasher *hasher, const uint8_t *data, size_t len);

/**
 * Writes the 32-byte digest to `out`. The handle can only be freed afterwards.
 *
 * # Safety
 * `hasher` must come from `hf_hasher_new*`; `out` must hold 32 bytes.
 */
enum HfStatus hf_hasher_finalize(struct HfHasher *hasher, uint8_t *out);

/**
 * Releases a hasher. Null is ignored.
 *
 * # Safety
 * `hasher` must come from `hf_hasher_new*` and not be used again.
 */
void hf_hasher_free(struct HfHasher *hasher);

/**
 * One-shot digest of `len` bytes into the 32-byte buffer `out`.
 *
 * # Safety
 * `data` must point to `len` bytes; `out` must hold 32 bytes.
 */
enum HfStatus hf_hash(const uint8_t *data, size_t len, uint32_t rounds, uint8_t *out);

/**
 * Like `hf_hash` but writes 64 lowercase hex digits and a terminating nul;
 * `out_len` must be at least `HF_HEX_LEN`.
 *
 * # Safety
 * `data` must point to `len` bytes; `out` must hold `out_len` bytes.
 */
enum HfStatus hf_hash_hex(const uint8_t *data,
                          size_t len,
                          uint32_t rounds,
                          char *out,
                          size_t out_len);

/**
 * Parses a polynomial system from nul-terminated text, one `y_{k} = ...`
 * line per polynomial.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum HfStatus hf_system_load(const char *text, struct HfSystem **out);

/**
 * A copy of the system shipped with the library.
 *
 * # Safety
 * `out` must be writable.
 */
enum HfStatus hf_system_shipped(struct HfSystem **out);

/**
 * Evaluates the 64-to-32-bit map; `x_1` is the most significant input bit
 * and `y_1` the most significant output bit.
 *
 * # Safety
 * `system` must come from `hf_system_*`; `out` must be writable.
 */
enum HfStatus hf_system_eval(const struct HfSystem *system, uint64_t x, uint32_t *out);

/**
 * Releases a system. Null is ignored.
 *
 * # Safety
 * `system` must come from `hf_system_*` and not be used again.
 */
void hf_system_free(struct HfSystem *system);

/**
 * Hashes the three published reference inputs and stores how many match.
 * Returns `Ok` whenever the check ran, whatever the count.
 *
 * # Safety
 * `passed` must be writable.
 */
enum HfStatus hf_self_test(uint32_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HFHASH_H */
