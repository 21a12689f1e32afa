/* C interface to the amortq cost-instrumented queue checker. */

#ifndef AMORTQ_H
#define AMORTQ_H

/* Generated by cbindgen from the amortq-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for fallible calls.
 */
typedef enum AmqStatus {
  /**
   * Success.
   */
  AMQ_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  AMQ_STATUS_NULL_ARG = 1,
  /**
   * The alphabet size was zero.
   */
  AMQ_STATUS_BAD_ALPHABET = 2,
  /**
   * No implementation with that name exists.
   */
  AMQ_STATUS_BAD_NAME = 3,
  /**
   * The program JSON did not parse or did not fit the alphabet.
   */
  AMQ_STATUS_BAD_PROGRAM = 4,
  /**
   * The operation panicked (for example on cost overflow).
   */
  AMQ_STATUS_PANIC = 5,
} AmqStatus;

/**
 * Opaque queue handle.
 */
typedef struct AmqQueue AmqQueue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Flat reference queue holding `items` (next out first). Pass
 * `items = NULL` only with `len = 0`. Returns null on bad arguments.
 * # Safety
 *
 * `items` must point at `len` readable bytes; it may be null only when `len` is 0.
 */
struct AmqQueue *amq_queue_spec(const uint8_t *items, size_t len);

/**
 * Batched queue over a back list (most recent first) and a front list
 * (next out first). Null lists are only allowed when empty.
 * # Safety
 *
 * Each list pointer must point at its stated number of readable bytes, or be null with length 0.
 */
struct AmqQueue *amq_queue_batched(const uint8_t *back,
                                   size_t back_len,
                                   const uint8_t *front,
                                   size_t front_len);

/**
 * Builds the claimed-equivalent pair for a named faulty implementation,
 * e.g. "mutant-free-quit". Both outputs must be freed.
 * # Safety
 *
 * `name` must be a NUL-terminated string, the list pointers must follow the [`amq_queue_batched`] rules, and `lhs`/`rhs` must be writable.
 */
enum AmqStatus amq_queue_mutant_pair(const char *name,
                                     const uint8_t *back,
                                     size_t back_len,
                                     const uint8_t *front,
                                     size_t front_len,
                                     struct AmqQueue **lhs,
                                     struct AmqQueue **rhs);

/**
 * Fresh handle to the same queue value.
 * # Safety
 *
 * `queue` must be null or a live handle from this API.
 */
struct AmqQueue *amq_queue_clone(const struct AmqQueue *queue);

/**
 * The queue with `extra` cost added to its pending balance.
 * # Safety
 *
 * `queue` must be null or a live handle from this API.
 */
struct AmqQueue *amq_queue_step(const struct AmqQueue *queue, uint64_t extra);

/**
 * Latent cost the queue is carrying. Zero on null.
 * # Safety
 *
 * `queue` must be null or a live handle from this API.
 */
uint64_t amq_queue_pending(const struct AmqQueue *queue);

/**
 * Stored potential of the underlying state. Zero on null.
 * # Safety
 *
 * `queue` must be null or a live handle from this API.
 */
uint64_t amq_queue_potential(const struct AmqQueue *queue);

/**
 * Cost of retiring the queue now: pending balance plus the
 * implementation's own quit cost. Zero on null.
 * # Safety
 *
 * `queue` must be null or a live handle from this API.
 */
uint64_t amq_queue_quit(const struct AmqQueue *queue);

/**
 * The queue after enqueueing `elem`; the input handle stays valid.
 * # Safety
 *
 * `queue` must be null or a live handle from this API.
 */
struct AmqQueue *amq_queue_enqueue(const struct AmqQueue *queue, uint8_t elem);

/**
 * Observes a dequeue. Writes the emitted cost, the element (`-1` when
 * the queue was empty), and a fresh handle to the residual queue.
 * # Safety
 *
 * `queue` must be null or a live handle; `cost`, `elem`, and `rest` must be writable.
 */
enum AmqStatus amq_queue_dequeue(const struct AmqQueue *queue,
                                 uint64_t *cost,
                                 int32_t *elem,
                                 struct AmqQueue **rest);

/**
 * Releases a queue handle. Null is a no-op.
 * # Safety
 *
 * `queue` must be null or an owned handle from this API; it must not be used afterwards.
 */
void amq_queue_free(struct AmqQueue *queue);

/**
 * Bounded equivalence check between two queues. On success writes a JSON
 * report (verdict, node count, shortest counterexample if any) through
 * `report_json`.
 * # Safety
 *
 * `lhs` and `rhs` must be null or live handles and `report_json` must be writable.
 */
enum AmqStatus amq_approx_check(const struct AmqQueue *lhs,
                                const struct AmqQueue *rhs,
                                uint32_t depth,
                                uint8_t alphabet,
                                char **report_json);

/**
 * Checks the batched queue over the given lists against the
 * potential-charged flat queue and writes the JSON report.
 * # Safety
 *
 * The list pointers must follow the [`amq_queue_batched`] rules and `report_json` must be writable.
 */
enum AmqStatus amq_theorem1_check(const uint8_t *back,
                                  size_t back_len,
                                  const uint8_t *front,
                                  size_t front_len,
                                  uint32_t depth,
                                  uint8_t alphabet,
                                  char **report_json);

/**
 * Runs a JSON-encoded client program against a queue and writes its
 * total cost. The program must fit the given alphabet.
 * # Safety
 *
 * `program_json` must be a NUL-terminated string, `queue` null or a live handle, and `cost` writable.
 */
enum AmqStatus amq_program_eval(const char *program_json,
                                const struct AmqQueue *queue,
                                uint8_t alphabet,
                                uint64_t *cost);

/**
 * Releases a string returned by this API. Null is a no-op.
 * # Safety
 *
 * `text` must be null or a string returned by this API; it must not be used afterwards.
 */
void amq_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AMORTQ_H */
