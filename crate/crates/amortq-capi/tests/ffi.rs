//! Exercises the C ABI the way a C caller would: raw pointers in, status
//! codes and JSON strings out.

use std::ffi::{CStr, CString, c_char};
use std::ptr;

use amortq_capi::*;

fn json_from(raw: *mut c_char) -> serde_json::Value {
    assert!(!raw.is_null());
    let text = unsafe { CStr::from_ptr(raw) }.to_str().unwrap().to_string();
    unsafe { amq_string_free(raw) };
    serde_json::from_str(&text).unwrap()
}

#[test]
fn spec_queue_flushes_its_latent_cost_on_quit() {
    unsafe {
        let queue = amq_queue_spec(ptr::null(), 0);
        assert!(!queue.is_null());
        assert_eq!(amq_queue_quit(queue), 0);

        let one = amq_queue_enqueue(queue, 4);
        let two = amq_queue_enqueue(one, 5);
        assert_eq!(amq_queue_pending(two), 2);
        assert_eq!(amq_queue_quit(two), 2);
        // The original handles are unaffected.
        assert_eq!(amq_queue_quit(queue), 0);
        assert_eq!(amq_queue_quit(one), 1);

        amq_queue_free(two);
        amq_queue_free(one);
        amq_queue_free(queue);
    }
}

#[test]
fn batched_dequeue_pays_for_the_reversal_and_hands_out_the_element() {
    unsafe {
        let back = [1u8, 0];
        let queue = amq_queue_batched(back.as_ptr(), back.len(), ptr::null(), 0);
        assert_eq!(amq_queue_potential(queue), 2);

        let mut cost = 0u64;
        let mut elem = 0i32;
        let mut rest: *mut AmqQueue = ptr::null_mut();
        assert_eq!(
            amq_queue_dequeue(queue, &mut cost, &mut elem, &mut rest),
            AmqStatus::Ok
        );
        assert_eq!((cost, elem), (2, 0));
        assert_eq!(amq_queue_potential(rest), 0);
        assert_eq!(amq_queue_quit(rest), 0);

        let mut rest2: *mut AmqQueue = ptr::null_mut();
        assert_eq!(
            amq_queue_dequeue(rest, &mut cost, &mut elem, &mut rest2),
            AmqStatus::Ok
        );
        assert_eq!((cost, elem), (0, 1));

        // Empty now: dequeues are free and yield -1.
        let mut rest3: *mut AmqQueue = ptr::null_mut();
        assert_eq!(
            amq_queue_dequeue(rest2, &mut cost, &mut elem, &mut rest3),
            AmqStatus::Ok
        );
        assert_eq!((cost, elem), (0, -1));

        for handle in [queue, rest, rest2, rest3] {
            amq_queue_free(handle);
        }
    }
}

#[test]
fn stepping_accumulates_pending_cost() {
    unsafe {
        let queue = amq_queue_batched(ptr::null(), 0, ptr::null(), 0);
        let stepped = amq_queue_step(queue, 7);
        let again = amq_queue_step(stepped, 3);
        assert_eq!(amq_queue_pending(again), 10);
        assert_eq!(amq_queue_quit(again), 10);

        let copy = amq_queue_clone(again);
        assert_eq!(amq_queue_quit(copy), 10);

        for handle in [queue, stepped, again, copy] {
            amq_queue_free(handle);
        }
    }
}

#[test]
fn approx_check_reports_the_charge_gap_and_its_absence() {
    unsafe {
        let items = [0u8];
        let lhs = amq_queue_batched(items.as_ptr(), items.len(), ptr::null(), 0);
        let rhs = amq_queue_spec(items.as_ptr(), items.len());

        let mut raw: *mut c_char = ptr::null_mut();
        assert_eq!(amq_approx_check(lhs, rhs, 3, 2, &mut raw), AmqStatus::Ok);
        let report = json_from(raw);
        assert_eq!(report["verdict"], "inequivalent");
        assert_eq!(report["counterexample"]["path"][0]["op"], "quit");

        // Charging the flat side with the stored potential closes the gap.
        let charged = amq_queue_step(rhs, amq_queue_potential(lhs));
        let mut raw2: *mut c_char = ptr::null_mut();
        assert_eq!(
            amq_approx_check(lhs, charged, 3, 2, &mut raw2),
            AmqStatus::Ok
        );
        assert_eq!(json_from(raw2)["verdict"], "equivalent");

        amq_queue_free(charged);
        amq_queue_free(rhs);
        amq_queue_free(lhs);
    }
}

#[test]
fn theorem1_check_passes_without_building_handles() {
    unsafe {
        let back = [1u8, 0];
        let front = [1u8];
        let mut raw: *mut c_char = ptr::null_mut();
        let status = amq_theorem1_check(
            back.as_ptr(),
            back.len(),
            front.as_ptr(),
            front.len(),
            5,
            2,
            &mut raw,
        );
        assert_eq!(status, AmqStatus::Ok);
        let report = json_from(raw);
        assert_eq!(report["verdict"], "equivalent");
        assert!(report["nodes"].as_u64().unwrap() > 0);
    }
}

#[test]
fn mutant_pairs_come_out_distinguishable() {
    unsafe {
        let name = CString::new("mutant-free-quit").unwrap();
        let mut lhs: *mut AmqQueue = ptr::null_mut();
        let mut rhs: *mut AmqQueue = ptr::null_mut();
        let status = amq_queue_mutant_pair(
            name.as_ptr(),
            ptr::null(),
            0,
            ptr::null(),
            0,
            &mut lhs,
            &mut rhs,
        );
        assert_eq!(status, AmqStatus::Ok);

        let mut raw: *mut c_char = ptr::null_mut();
        assert_eq!(amq_approx_check(lhs, rhs, 6, 2, &mut raw), AmqStatus::Ok);
        assert_eq!(json_from(raw)["verdict"], "inequivalent");

        amq_queue_free(rhs);
        amq_queue_free(lhs);

        let bogus = CString::new("mutant-bogus").unwrap();
        let status = amq_queue_mutant_pair(
            bogus.as_ptr(),
            ptr::null(),
            0,
            ptr::null(),
            0,
            &mut lhs,
            &mut rhs,
        );
        assert_eq!(status, AmqStatus::BadName);
    }
}

#[test]
fn program_eval_charges_the_documented_cost() {
    unsafe {
        let queue = amq_queue_batched(ptr::null(), 0, ptr::null(), 0);
        let program = CString::new(
            r#"{"op":"enqueue","elem":0,"rest":{"op":"dequeue","cost":0,
            "none":{"op":"return"},
            "some":{"0":{"op":"return"},"1":{"op":"return"}}}}"#,
        )
        .unwrap();
        let mut cost = u64::MAX;
        assert_eq!(
            amq_program_eval(program.as_ptr(), queue, 2, &mut cost),
            AmqStatus::Ok
        );
        assert_eq!(cost, 1);

        let broken = CString::new(r#"{"op":"enqueue","elem":9,"rest":{"op":"return"}}"#).unwrap();
        assert_eq!(
            amq_program_eval(broken.as_ptr(), queue, 2, &mut cost),
            AmqStatus::BadProgram
        );

        amq_queue_free(queue);
    }
}

#[test]
fn null_arguments_are_rejected_not_dereferenced() {
    unsafe {
        assert!(amq_queue_spec(ptr::null(), 3).is_null());
        assert!(amq_queue_clone(ptr::null()).is_null());
        assert!(amq_queue_step(ptr::null(), 1).is_null());
        assert_eq!(amq_queue_quit(ptr::null()), 0);

        let mut cost = 0u64;
        let mut elem = 0i32;
        let mut rest: *mut AmqQueue = ptr::null_mut();
        assert_eq!(
            amq_queue_dequeue(ptr::null(), &mut cost, &mut elem, &mut rest),
            AmqStatus::NullArg
        );

        let queue = amq_queue_spec(ptr::null(), 0);
        assert_eq!(
            amq_queue_dequeue(queue, ptr::null_mut(), &mut elem, &mut rest),
            AmqStatus::NullArg
        );
        let mut raw: *mut c_char = ptr::null_mut();
        assert_eq!(
            amq_approx_check(queue, ptr::null(), 2, 2, &mut raw),
            AmqStatus::NullArg
        );
        assert_eq!(
            amq_approx_check(queue, queue, 2, 0, &mut raw),
            AmqStatus::BadAlphabet
        );
        amq_queue_free(queue);

        // Frees tolerate null.
        amq_queue_free(ptr::null_mut());
        amq_string_free(ptr::null_mut());
    }
}
