use std::ffi::{c_char, CStr};
use std::ptr;

use swtree_ffi::*;

fn msg(p: *const c_char) -> String {
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn new_tree(group: &CStr, words: &[i64]) -> Result<*mut SwTree, SwStatus> {
    let mut t = ptr::null_mut();
    match sw_tree_new(group.as_ptr(), words.as_ptr(), words.len(), &mut t) {
        SwStatus::Ok => Ok(t),
        s => {
            assert!(t.is_null());
            Err(s)
        }
    }
}

#[test]
fn demo_through_the_abi() {
    unsafe {
        let t = new_tree(c"wrap-add", &[1, 3, 5, 7, 9, 11, 13, 15, 17]).unwrap();
        assert_eq!(sw_tree_len(t), 9);
        assert_eq!(sw_tree_width(t), 1);

        let mut nodes = [0i64; 9];
        assert_eq!(sw_tree_nodes(t, nodes.as_mut_ptr(), 9), SwStatus::Ok);
        assert_eq!(nodes, [1, 3, 9, 7, 9, 27, 49, 15, 17]);

        let mut v = [0i64];
        assert_eq!(sw_tree_prefix(t, 5, v.as_mut_ptr(), 1), SwStatus::Ok);
        assert_eq!(v[0], 25);
        assert_eq!(sw_tree_update(t, 2, [100].as_ptr(), 1), SwStatus::Ok);
        sw_tree_prefix(t, 9, v.as_mut_ptr(), 1);
        assert_eq!(v[0], 181);

        let mut elems = [0i64; 9];
        assert_eq!(sw_tree_elements(t, elems.as_mut_ptr(), 9), SwStatus::Ok);
        assert_eq!(elems, [1, 3, 105, 7, 9, 11, 13, 15, 17]);
        // elements() must not disturb the tree
        sw_tree_prefix(t, 3, v.as_mut_ptr(), 1);
        assert_eq!(v[0], 109);
        sw_tree_free(t);
    }
}

#[test]
fn permutations_use_k_words() {
    unsafe {
        let mut w = 0;
        assert_eq!(sw_element_width(c"perm:3".as_ptr(), &mut w), SwStatus::Ok);
        assert_eq!(w, 3);
        let t = new_tree(c"perm:3", &[1, 0, 2, 0, 2, 1]).unwrap();
        let mut out = [0i64; 3];
        assert_eq!(sw_tree_prefix(t, 2, out.as_mut_ptr(), 3), SwStatus::Ok);
        assert_eq!(out, [2, 0, 1]);
        sw_tree_free(t);

        assert_eq!(sw_element_width(c"gl2:7".as_ptr(), &mut w), SwStatus::Ok);
        assert_eq!(w, 4);
    }
}

#[test]
fn error_codes() {
    unsafe {
        assert_eq!(new_tree(c"quaternion", &[1]), Err(SwStatus::UnknownGroup));
        assert!(msg(sw_last_error()).contains("quaternion"));
        assert_eq!(
            new_tree(c"gl2:6", &[1, 0, 0, 1]),
            Err(SwStatus::InvalidGroup)
        );
        assert_eq!(new_tree(c"wrap-add", &[]), Err(SwStatus::Empty));
        assert_eq!(new_tree(c"perm:3", &[0, 1]), Err(SwStatus::BufferSize));
        assert_eq!(
            new_tree(c"perm:3", &[0, 0, 1]),
            Err(SwStatus::InvalidElement)
        );
        assert_eq!(new_tree(c"mod-add:5", &[7]), Err(SwStatus::InvalidElement));
        assert_eq!(
            sw_tree_new(ptr::null(), ptr::null(), 0, &mut ptr::null_mut()),
            SwStatus::NullPointer
        );

        let t = new_tree(c"wrap-add", &[1, 2, 3]).unwrap();
        let mut v = [0i64; 2];
        assert_eq!(
            sw_tree_prefix(t, 4, v.as_mut_ptr(), 1),
            SwStatus::OutOfRange
        );
        assert_eq!(
            sw_tree_prefix(t, 0, v.as_mut_ptr(), 1),
            SwStatus::OutOfRange
        );
        assert_eq!(
            sw_tree_prefix(t, 1, v.as_mut_ptr(), 2),
            SwStatus::BufferSize
        );
        assert_eq!(sw_tree_update(t, 3, [1].as_ptr(), 1), SwStatus::OutOfRange);
        assert_eq!(
            sw_tree_prefix(ptr::null(), 1, v.as_mut_ptr(), 1),
            SwStatus::NullPointer
        );
        assert_eq!(sw_tree_len(ptr::null()), 0);
        sw_tree_free(t);
        sw_tree_free(ptr::null_mut());
    }
}

#[test]
fn phantoms_and_messages() {
    let mut p = 0;
    unsafe {
        assert_eq!(sw_phantom_count(9, &mut p), SwStatus::Ok);
        assert_eq!(p, 6);
        assert_eq!(sw_phantom_count(0, &mut p), SwStatus::Empty);
    }
    assert_eq!(msg(sw_status_message(SwStatus::Ok)), "ok");
    assert_eq!(
        msg(sw_status_message(SwStatus::OutOfRange)),
        "index or count out of range"
    );
}
