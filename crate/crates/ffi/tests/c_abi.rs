use std::ffi::{c_char, CStr, CString};
use std::ptr;

use hfhash_ffi::*;

fn last_error() -> String {
    let p = hf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn one_shot(data: &[u8], rounds: u32) -> [u8; HF_DIGEST_LEN] {
    let mut out = [0u8; HF_DIGEST_LEN];
    let status = unsafe { hf_hash(data.as_ptr(), data.len(), rounds, out.as_mut_ptr()) };
    assert_eq!(status, HfStatus::Ok);
    out
}

#[test]
fn one_shot_matches_library() {
    for msg in [&b""[..], b"a", b"abc", &[7u8; 1000]] {
        assert_eq!(one_shot(msg, 64), hfhash::digest(msg).to_bytes());
    }
}

#[test]
fn hex_output() {
    let mut buf = [0 as c_char; HF_HEX_LEN];
    let status = unsafe { hf_hash_hex(b"a".as_ptr(), 1, 64, buf.as_mut_ptr(), buf.len()) };
    assert_eq!(status, HfStatus::Ok);
    let hex = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    assert_eq!(hex, hfhash::digest(b"a").to_hex());

    let status = unsafe { hf_hash_hex(b"a".as_ptr(), 1, 64, buf.as_mut_ptr(), 64) };
    assert_eq!(status, HfStatus::BufferTooSmall);
    assert!(last_error().contains("65"));
}

#[test]
fn streaming_lifecycle() {
    let data: Vec<u8> = (0..500u32).map(|i| (i * 31) as u8).collect();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(hf_hasher_new(48, &mut h), HfStatus::Ok);
        for chunk in data.chunks(77) {
            assert_eq!(
                hf_hasher_update(h, chunk.as_ptr(), chunk.len()),
                HfStatus::Ok
            );
        }
        assert_eq!(hf_hasher_update(h, ptr::null(), 0), HfStatus::Ok);
        let mut out = [0u8; HF_DIGEST_LEN];
        assert_eq!(hf_hasher_finalize(h, out.as_mut_ptr()), HfStatus::Ok);
        assert_eq!(out, one_shot(&data, 48));

        assert_eq!(hf_hasher_update(h, data.as_ptr(), 1), HfStatus::Finalized);
        assert_eq!(hf_hasher_finalize(h, out.as_mut_ptr()), HfStatus::Finalized);
        assert!(last_error().contains("finalized"));
        hf_hasher_free(h);
        hf_hasher_free(ptr::null_mut());
    }
}

#[test]
fn argument_errors() {
    let mut out = [0u8; HF_DIGEST_LEN];
    unsafe {
        assert_eq!(
            hf_hash(b"a".as_ptr(), 1, 40, out.as_mut_ptr()),
            HfStatus::InvalidArgument
        );
        assert!(last_error().contains("40"));
        assert_eq!(
            hf_hash(ptr::null(), 3, 64, out.as_mut_ptr()),
            HfStatus::NullPointer
        );
        assert_eq!(
            hf_hash(b"a".as_ptr(), 1, 64, ptr::null_mut()),
            HfStatus::NullPointer
        );
        assert_eq!(hf_hasher_new(64, ptr::null_mut()), HfStatus::NullPointer);
        let mut h = ptr::null_mut();
        assert_eq!(hf_hasher_new(33, &mut h), HfStatus::InvalidArgument);
        assert!(h.is_null());
        assert_eq!(
            hf_hasher_update(ptr::null_mut(), ptr::null(), 0),
            HfStatus::NullPointer
        );
    }
}

#[test]
fn systems() {
    let text = CString::new(hfhash::poly::SHIPPED_ASSET).unwrap();
    let mut loaded = ptr::null_mut();
    let mut shipped = ptr::null_mut();
    unsafe {
        assert_eq!(hf_system_load(text.as_ptr(), &mut loaded), HfStatus::Ok);
        assert_eq!(hf_system_shipped(&mut shipped), HfStatus::Ok);
        let sys = hfhash::PolynomialSystem::shipped();
        for x in [0u64, u64::MAX, 0x0123_4567_89ab_cdef] {
            let (mut a, mut b) = (0u32, 0u32);
            assert_eq!(hf_system_eval(loaded, x, &mut a), HfStatus::Ok);
            assert_eq!(hf_system_eval(shipped, x, &mut b), HfStatus::Ok);
            assert_eq!(a, sys.eval_oracle(x));
            assert_eq!(a, b);
        }
        assert_eq!(hf_system_eval(loaded, 0, &mut 0u32), HfStatus::Ok);

        let mut h = ptr::null_mut();
        assert_eq!(hf_hasher_new_with_system(loaded, 64, &mut h), HfStatus::Ok);
        hf_system_free(loaded);
        assert_eq!(hf_hasher_update(h, b"abc".as_ptr(), 3), HfStatus::Ok);
        let mut out = [0u8; HF_DIGEST_LEN];
        assert_eq!(hf_hasher_finalize(h, out.as_mut_ptr()), HfStatus::Ok);
        assert_eq!(out, one_shot(b"abc", 64));
        hf_hasher_free(h);
        hf_system_free(shipped);

        let bad = CString::new("y_{1} = x_{1}\n").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(hf_system_load(bad.as_ptr(), &mut s), HfStatus::Parse);
        assert!(s.is_null());
        assert!(last_error().contains("32"));
        let garbage = CString::new("y_{1} = x_{99}\n").unwrap();
        assert_eq!(hf_system_load(garbage.as_ptr(), &mut s), HfStatus::Parse);
        assert!(last_error().contains("line 1"));
    }
}

#[test]
fn self_test_count() {
    let mut passed = 99u32;
    assert_eq!(unsafe { hf_self_test(&mut passed) }, HfStatus::Ok);
    assert_eq!(
        passed as usize,
        hfhash::hash::self_test(&hfhash::HfParams::canonical()).passed()
    );
}
