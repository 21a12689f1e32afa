//! C ABI over the queue protocol and the equivalence checker.
//!
//! Queues cross the boundary as opaque `AmqQueue` handles; reports cross
//! as JSON strings the caller must release with [`amq_string_free`].
//! Every function is panic-safe: a caught panic surfaces as
//! [`AmqStatus::Panic`] or a null pointer, never as unwinding into C.
//!
//! Ownership rules:
//!
//! * every non-null `AmqQueue*` returned here is a fresh handle the
//!   caller must release with [`amq_queue_free`],
//! * input handles are only borrowed; they stay valid and reusable,
//! * strings returned through `char**` are released with
//!   [`amq_string_free`].

use std::ffi::{CStr, CString, c_char};
use std::panic::{AssertUnwindSafe, catch_unwind};
use std::ptr;

use amortq::mutants::Mutant;
use amortq::program::{Program, evaluate};
use amortq::queue::{Alphabet, Element, QueueObj};
use amortq::{approx_check, batched_queue, spec_queue, theorem1_check};

/// Opaque queue handle.
pub struct AmqQueue(QueueObj);

/// Result codes for fallible calls.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmqStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArg = 1,
    /// The alphabet size was zero.
    BadAlphabet = 2,
    /// No implementation with that name exists.
    BadName = 3,
    /// The program JSON did not parse or did not fit the alphabet.
    BadProgram = 4,
    /// The operation panicked (for example on cost overflow).
    Panic = 5,
}

fn elements<'a>(ptr: *const u8, len: usize) -> Option<&'a [u8]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        // SAFETY: the caller promises `ptr` points at `len` readable bytes.
        Some(unsafe { std::slice::from_raw_parts(ptr, len) })
    }
}

fn to_elems(raw: &[u8]) -> Vec<Element> {
    raw.iter().copied().map(Element::new).collect()
}

fn queue_ref<'a>(queue: *const AmqQueue) -> Option<&'a QueueObj> {
    // SAFETY: the caller promises `queue` is a live handle from this API.
    unsafe { queue.as_ref() }.map(|q| &q.0)
}

fn into_handle(queue: QueueObj) -> *mut AmqQueue {
    Box::into_raw(Box::new(AmqQueue(queue)))
}

fn handle_or_null(op: impl FnOnce() -> Option<QueueObj>) -> *mut AmqQueue {
    match catch_unwind(AssertUnwindSafe(op)) {
        Ok(Some(queue)) => into_handle(queue),
        _ => ptr::null_mut(),
    }
}

fn export_string(text: String, out: *mut *mut c_char) -> AmqStatus {
    match CString::new(text) {
        Ok(cstring) => {
            // SAFETY: `out` was checked non-null by the caller.
            unsafe { *out = cstring.into_raw() };
            AmqStatus::Ok
        }
        Err(_) => AmqStatus::Panic,
    }
}

/// Flat reference queue holding `items` (next out first). Pass
/// `items = NULL` only with `len = 0`. Returns null on bad arguments.
/// # Safety
///
/// `items` must point at `len` readable bytes; it may be null only when `len` is 0.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_spec(items: *const u8, len: usize) -> *mut AmqQueue {
    handle_or_null(|| Some(spec_queue(to_elems(elements(items, len)?))))
}

/// Batched queue over a back list (most recent first) and a front list
/// (next out first). Null lists are only allowed when empty.
/// # Safety
///
/// Each list pointer must point at its stated number of readable bytes, or be null with length 0.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_batched(
    back: *const u8,
    back_len: usize,
    front: *const u8,
    front_len: usize,
) -> *mut AmqQueue {
    handle_or_null(|| {
        Some(batched_queue(
            to_elems(elements(back, back_len)?),
            to_elems(elements(front, front_len)?),
        ))
    })
}

/// Builds the claimed-equivalent pair for a named faulty implementation,
/// e.g. "mutant-free-quit". Both outputs must be freed.
/// # Safety
///
/// `name` must be a NUL-terminated string, the list pointers must follow the [`amq_queue_batched`] rules, and `lhs`/`rhs` must be writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_mutant_pair(
    name: *const c_char,
    back: *const u8,
    back_len: usize,
    front: *const u8,
    front_len: usize,
    lhs: *mut *mut AmqQueue,
    rhs: *mut *mut AmqQueue,
) -> AmqStatus {
    if name.is_null() || lhs.is_null() || rhs.is_null() {
        return AmqStatus::NullArg;
    }
    // SAFETY: `name` is a caller-provided NUL-terminated string.
    let Ok(name) = unsafe { CStr::from_ptr(name) }.to_str() else {
        return AmqStatus::BadName;
    };
    let Some(mutant) = Mutant::from_name(name) else {
        return AmqStatus::BadName;
    };
    let (Some(back), Some(front)) = (elements(back, back_len), elements(front, front_len)) else {
        return AmqStatus::NullArg;
    };
    match catch_unwind(|| mutant.claim_pair(&to_elems(back), &to_elems(front))) {
        Ok((l, r)) => {
            // SAFETY: `lhs` and `rhs` were checked non-null above.
            unsafe {
                *lhs = into_handle(l);
                *rhs = into_handle(r);
            }
            AmqStatus::Ok
        }
        Err(_) => AmqStatus::Panic,
    }
}

/// Fresh handle to the same queue value.
/// # Safety
///
/// `queue` must be null or a live handle from this API.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_clone(queue: *const AmqQueue) -> *mut AmqQueue {
    handle_or_null(|| queue_ref(queue).cloned())
}

/// The queue with `extra` cost added to its pending balance.
/// # Safety
///
/// `queue` must be null or a live handle from this API.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_step(queue: *const AmqQueue, extra: u64) -> *mut AmqQueue {
    handle_or_null(|| Some(queue_ref(queue)?.step(extra.into())))
}

/// Latent cost the queue is carrying. Zero on null.
/// # Safety
///
/// `queue` must be null or a live handle from this API.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_pending(queue: *const AmqQueue) -> u64 {
    queue_ref(queue).map_or(0, |q| q.pending().value())
}

/// Stored potential of the underlying state. Zero on null.
/// # Safety
///
/// `queue` must be null or a live handle from this API.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_potential(queue: *const AmqQueue) -> u64 {
    queue_ref(queue).map_or(0, |q| q.potential().value())
}

/// Cost of retiring the queue now: pending balance plus the
/// implementation's own quit cost. Zero on null.
/// # Safety
///
/// `queue` must be null or a live handle from this API.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_quit(queue: *const AmqQueue) -> u64 {
    queue_ref(queue).map_or(0, |q| q.quit().value())
}

/// The queue after enqueueing `elem`; the input handle stays valid.
/// # Safety
///
/// `queue` must be null or a live handle from this API.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_enqueue(queue: *const AmqQueue, elem: u8) -> *mut AmqQueue {
    handle_or_null(|| Some(queue_ref(queue)?.enqueue(Element::new(elem))))
}

/// Observes a dequeue. Writes the emitted cost, the element (`-1` when
/// the queue was empty), and a fresh handle to the residual queue.
/// # Safety
///
/// `queue` must be null or a live handle; `cost`, `elem`, and `rest` must be writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_dequeue(
    queue: *const AmqQueue,
    cost: *mut u64,
    elem: *mut i32,
    rest: *mut *mut AmqQueue,
) -> AmqStatus {
    if cost.is_null() || elem.is_null() || rest.is_null() {
        return AmqStatus::NullArg;
    }
    let Some(q) = queue_ref(queue) else {
        return AmqStatus::NullArg;
    };
    match catch_unwind(AssertUnwindSafe(|| q.dequeue())) {
        Ok(d) => {
            // SAFETY: all three out-pointers were checked non-null above.
            unsafe {
                *cost = d.cost.value();
                *elem = d.elem.map_or(-1, |e| e.value() as i32);
                *rest = into_handle(d.rest);
            }
            AmqStatus::Ok
        }
        Err(_) => AmqStatus::Panic,
    }
}

/// Releases a queue handle. Null is a no-op.
/// # Safety
///
/// `queue` must be null or an owned handle from this API; it must not be used afterwards.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_queue_free(queue: *mut AmqQueue) {
    if !queue.is_null() {
        // SAFETY: the caller passes a handle obtained from this API and
        // gives up ownership.
        drop(unsafe { Box::from_raw(queue) });
    }
}

/// Bounded equivalence check between two queues. On success writes a JSON
/// report (verdict, node count, shortest counterexample if any) through
/// `report_json`.
/// # Safety
///
/// `lhs` and `rhs` must be null or live handles and `report_json` must be writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_approx_check(
    lhs: *const AmqQueue,
    rhs: *const AmqQueue,
    depth: u32,
    alphabet: u8,
    report_json: *mut *mut c_char,
) -> AmqStatus {
    if report_json.is_null() {
        return AmqStatus::NullArg;
    }
    let (Some(l), Some(r)) = (queue_ref(lhs), queue_ref(rhs)) else {
        return AmqStatus::NullArg;
    };
    if alphabet == 0 {
        return AmqStatus::BadAlphabet;
    }
    match catch_unwind(AssertUnwindSafe(|| {
        approx_check(l, r, depth, Alphabet::new(alphabet))
    })) {
        Ok(report) => export_string(
            serde_json::to_string(&report).expect("reports always serialize"),
            report_json,
        ),
        Err(_) => AmqStatus::Panic,
    }
}

/// Checks the batched queue over the given lists against the
/// potential-charged flat queue and writes the JSON report.
/// # Safety
///
/// The list pointers must follow the [`amq_queue_batched`] rules and `report_json` must be writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_theorem1_check(
    back: *const u8,
    back_len: usize,
    front: *const u8,
    front_len: usize,
    depth: u32,
    alphabet: u8,
    report_json: *mut *mut c_char,
) -> AmqStatus {
    if report_json.is_null() {
        return AmqStatus::NullArg;
    }
    let (Some(back), Some(front)) = (elements(back, back_len), elements(front, front_len)) else {
        return AmqStatus::NullArg;
    };
    if alphabet == 0 {
        return AmqStatus::BadAlphabet;
    }
    match catch_unwind(|| {
        theorem1_check(
            &to_elems(back),
            &to_elems(front),
            depth,
            Alphabet::new(alphabet),
        )
    }) {
        Ok(report) => export_string(
            serde_json::to_string(&report).expect("reports always serialize"),
            report_json,
        ),
        Err(_) => AmqStatus::Panic,
    }
}

/// Runs a JSON-encoded client program against a queue and writes its
/// total cost. The program must fit the given alphabet.
/// # Safety
///
/// `program_json` must be a NUL-terminated string, `queue` null or a live handle, and `cost` writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_program_eval(
    program_json: *const c_char,
    queue: *const AmqQueue,
    alphabet: u8,
    cost: *mut u64,
) -> AmqStatus {
    if program_json.is_null() || cost.is_null() {
        return AmqStatus::NullArg;
    }
    let Some(q) = queue_ref(queue) else {
        return AmqStatus::NullArg;
    };
    if alphabet == 0 {
        return AmqStatus::BadAlphabet;
    }
    // SAFETY: `program_json` is a caller-provided NUL-terminated string.
    let Ok(text) = unsafe { CStr::from_ptr(program_json) }.to_str() else {
        return AmqStatus::BadProgram;
    };
    let Ok(program) = serde_json::from_str::<Program>(text) else {
        return AmqStatus::BadProgram;
    };
    if program.validate(Alphabet::new(alphabet)).is_err() {
        return AmqStatus::BadProgram;
    }
    match catch_unwind(AssertUnwindSafe(|| evaluate(&program, q))) {
        Ok(result) => {
            // SAFETY: `cost` was checked non-null above.
            unsafe { *cost = result.cost.value() };
            AmqStatus::Ok
        }
        Err(_) => AmqStatus::Panic,
    }
}

/// Releases a string returned by this API. Null is a no-op.
/// # Safety
///
/// `text` must be null or a string returned by this API; it must not be used afterwards.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn amq_string_free(text: *mut c_char) {
    if !text.is_null() {
        // SAFETY: the string came from `CString::into_raw` in this crate.
        drop(unsafe { CString::from_raw(text) });
    }
}
