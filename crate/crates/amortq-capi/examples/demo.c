/* Minimal C caller: build the library, then
 *
 *   cargo build --release -p amortq-capi
 *   cc -Icrates/amortq-capi/include crates/amortq-capi/examples/demo.c \
 *      target/release/libamortq_capi.a -lpthread -ldl -lm -o demo
 */
#include "amortq.h"

#include <assert.h>
#include <stdio.h>

int main(void) {
  /* A batched queue holding [0] with [1] still unreversed in back. */
  uint8_t back[1] = {1};
  uint8_t front[1] = {0};
  AmqQueue *queue = amq_queue_batched(back, 1, front, 1);
  assert(queue != NULL);
  printf("potential: %llu\n", (unsigned long long)amq_queue_potential(queue));

  /* First element comes out free; the second pays for its reversal. */
  uint64_t cost = 0;
  int32_t elem = 0;
  AmqQueue *rest = NULL;
  assert(amq_queue_dequeue(queue, &cost, &elem, &rest) == AMQ_STATUS_OK);
  printf("dequeued %d at cost %llu\n", elem, (unsigned long long)cost);

  /* Equivalence report against the potential-charged flat queue. */
  char *report = NULL;
  assert(amq_theorem1_check(back, 1, front, 1, 5, 2, &report) == AMQ_STATUS_OK);
  printf("%s\n", report);

  amq_string_free(report);
  amq_queue_free(rest);
  amq_queue_free(queue);
  return 0;
}
