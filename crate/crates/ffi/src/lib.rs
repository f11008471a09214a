//! C ABI over a Southwest tree with a runtime-selected group.
//!
//! Elements cross the boundary as flat `int64_t` words: one word for
//! `wrap-add` and `mod-add:p`, `k` words (the image of `0..k`) for
//! `perm:k`, four row-major words for `gl2:p`. Indices are zero-based for
//! updates; prefix counts are one-based lengths.
//!
//! Every fallible call returns an [`SwStatus`]; on failure the message is
//! available from [`sw_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use swtree::group::{Mat2, Permutation};
use swtree::{AnyElement, AnyGroup, Error, SouthwestTree};

/// Opaque tree handle. Create with [`sw_tree_new`], release with
/// [`sw_tree_free`].
pub struct SwTree {
    inner: SouthwestTree<AnyGroup>,
    width: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownGroup = 3,
    InvalidGroup = 4,
    Empty = 5,
    OutOfRange = 6,
    InvalidElement = 7,
    BufferSize = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: SwStatus, msg: impl Into<String>) -> SwStatus {
    set_error(msg);
    status
}

fn from_core(e: Error) -> SwStatus {
    let status = match e {
        Error::EmptyStructure => SwStatus::Empty,
        Error::IndexOutOfRange { .. }
        | Error::CountOutOfRange { .. }
        | Error::InvalidNode { .. } => SwStatus::OutOfRange,
        Error::UnknownGroup(_) => SwStatus::UnknownGroup,
        Error::InvalidGroup(_) => SwStatus::InvalidGroup,
        _ => SwStatus::InvalidElement,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into [`SwStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), SwStatus>) -> SwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(SwStatus::Panic, "internal panic"),
    }
}

fn width_of(group: &AnyGroup) -> usize {
    match group {
        AnyGroup::WrappingAdd(_) | AnyGroup::ModAdd(_) => 1,
        AnyGroup::Perm(g) => g.degree(),
        AnyGroup::Gl2(_) => 4,
    }
}

fn unsigned(w: i64) -> Result<u64, SwStatus> {
    u64::try_from(w).map_err(|_| fail(SwStatus::InvalidElement, format!("negative word {w}")))
}

fn decode(group: &AnyGroup, words: &[i64]) -> Result<AnyElement, SwStatus> {
    let element = match group {
        AnyGroup::WrappingAdd(_) => AnyElement::Int(words[0]),
        AnyGroup::ModAdd(_) => AnyElement::Residue(unsigned(words[0])?),
        AnyGroup::Perm(_) => {
            let image = words
                .iter()
                .map(|&w| {
                    u32::try_from(w)
                        .map_err(|_| fail(SwStatus::InvalidElement, format!("{w} is not a point")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            AnyElement::Perm(Permutation::new(image).map_err(from_core)?)
        }
        AnyGroup::Gl2(_) => AnyElement::Mat(Mat2([
            unsigned(words[0])?,
            unsigned(words[1])?,
            unsigned(words[2])?,
            unsigned(words[3])?,
        ])),
    };
    use swtree::Group as _;
    group.validate(&element).map_err(from_core)?;
    Ok(element)
}

fn encode(element: &AnyElement, out: &mut [i64]) {
    match element {
        AnyElement::Int(v) => out[0] = *v,
        AnyElement::Residue(v) => out[0] = *v as i64,
        AnyElement::Perm(p) => {
            for (o, &x) in out.iter_mut().zip(p.image()) {
                *o = x as i64;
            }
        }
        AnyElement::Mat(m) => {
            for (o, &x) in out.iter_mut().zip(&m.0) {
                *o = x as i64;
            }
        }
    }
}

unsafe fn group_arg(group: *const c_char) -> Result<AnyGroup, SwStatus> {
    if group.is_null() {
        return Err(fail(SwStatus::NullPointer, "group id is null"));
    }
    let id = CStr::from_ptr(group)
        .to_str()
        .map_err(|_| fail(SwStatus::InvalidUtf8, "group id is not UTF-8"))?;
    id.parse().map_err(from_core)
}

unsafe fn words_in<'a>(ptr: *const i64, len: usize) -> Result<&'a [i64], SwStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(fail(SwStatus::NullPointer, "word buffer is null"));
    }
    Ok(slice::from_raw_parts(ptr, len))
}

unsafe fn words_out<'a>(ptr: *mut i64, len: usize, need: usize) -> Result<&'a mut [i64], SwStatus> {
    if len != need {
        return Err(fail(
            SwStatus::BufferSize,
            format!("buffer holds {len} words, {need} required"),
        ));
    }
    if need == 0 {
        return Ok(&mut []);
    }
    if ptr.is_null() {
        return Err(fail(SwStatus::NullPointer, "output buffer is null"));
    }
    Ok(slice::from_raw_parts_mut(ptr, len))
}

unsafe fn tree_ref<'a>(tree: *const SwTree) -> Result<&'a SwTree, SwStatus> {
    tree.as_ref()
        .ok_or_else(|| fail(SwStatus::NullPointer, "tree handle is null"))
}

/// Words per element for `group`.
///
/// # Safety
/// `group` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_element_width(group: *const c_char, out: *mut usize) -> SwStatus {
    guard(|| {
        let g = group_arg(group)?;
        if out.is_null() {
            return Err(fail(SwStatus::NullPointer, "out is null"));
        }
        *out = width_of(&g);
        Ok(())
    })
}

/// Builds a tree over `n_words / width` elements stored back to back.
///
/// # Safety
/// `group` must be a NUL-terminated string, `words` must point to
/// `n_words` readable values, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_tree_new(
    group: *const c_char,
    words: *const i64,
    n_words: usize,
    out: *mut *mut SwTree,
) -> SwStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(SwStatus::NullPointer, "out is null"));
        }
        *out = ptr::null_mut();
        let g = group_arg(group)?;
        let width = width_of(&g);
        let words = words_in(words, n_words)?;
        if !n_words.is_multiple_of(width) {
            return Err(fail(
                SwStatus::BufferSize,
                format!("{n_words} words is not a multiple of the element width {width}"),
            ));
        }
        let init = words
            .chunks(width)
            .map(|c| decode(&g, c))
            .collect::<Result<Vec<_>, _>>()?;
        let inner = SouthwestTree::build(g, init).map_err(from_core)?;
        *out = Box::into_raw(Box::new(SwTree { inner, width }));
        Ok(())
    })
}

/// Releases a tree. Null is ignored.
///
/// # Safety
/// `tree` must come from [`sw_tree_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sw_tree_free(tree: *mut SwTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sw_tree_len(tree: *const SwTree) -> usize {
    tree.as_ref().map_or(0, |t| t.inner.len())
}

/// Words per element, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sw_tree_width(tree: *const SwTree) -> usize {
    tree.as_ref().map_or(0, |t| t.width)
}

/// Writes the combination of the first `count` elements into `out`
/// (`out_len` must equal the element width).
///
/// # Safety
/// `tree` must be a live handle; `out` must point to `out_len` writable words.
#[no_mangle]
pub unsafe extern "C" fn sw_tree_prefix(
    tree: *const SwTree,
    count: usize,
    out: *mut i64,
    out_len: usize,
) -> SwStatus {
    guard(|| {
        let t = tree_ref(tree)?;
        let out = words_out(out, out_len, t.width)?;
        let v = t.inner.prefix(count).map_err(from_core)?;
        encode(&v, out);
        Ok(())
    })
}

/// Replaces element `index` (zero-based) with `element · delta`.
///
/// # Safety
/// `tree` must be a live handle not used concurrently; `delta` must point
/// to `len` readable words.
#[no_mangle]
pub unsafe extern "C" fn sw_tree_update(
    tree: *mut SwTree,
    index: usize,
    delta: *const i64,
    len: usize,
) -> SwStatus {
    guard(|| {
        let t = tree
            .as_mut()
            .ok_or_else(|| fail(SwStatus::NullPointer, "tree handle is null"))?;
        if len != t.width {
            return Err(fail(
                SwStatus::BufferSize,
                format!("delta has {len} words, {} required", t.width),
            ));
        }
        let d = decode(t.inner.group(), words_in(delta, len)?)?;
        t.inner.update(index, &d).map_err(from_core)
    })
}

/// Copies the stored node values (`len * width` words).
///
/// # Safety
/// `tree` must be a live handle; `out` must point to `out_len` writable words.
#[no_mangle]
pub unsafe extern "C" fn sw_tree_nodes(
    tree: *const SwTree,
    out: *mut i64,
    out_len: usize,
) -> SwStatus {
    guard(|| {
        let t = tree_ref(tree)?;
        let out = words_out(out, out_len, t.inner.len() * t.width)?;
        for (v, chunk) in t.inner.as_slice().iter().zip(out.chunks_mut(t.width)) {
            encode(v, chunk);
        }
        Ok(())
    })
}

/// Copies the current element values (`len * width` words), recovered
/// from the stored nodes. The tree is left unchanged.
///
/// # Safety
/// `tree` must be a live handle; `out` must point to `out_len` writable words.
#[no_mangle]
pub unsafe extern "C" fn sw_tree_elements(
    tree: *const SwTree,
    out: *mut i64,
    out_len: usize,
) -> SwStatus {
    guard(|| {
        let t = tree_ref(tree)?;
        let out = words_out(out, out_len, t.inner.len() * t.width)?;
        let values = t.inner.clone().into_initial();
        for (v, chunk) in values.iter().zip(out.chunks_mut(t.width)) {
            encode(v, chunk);
        }
        Ok(())
    })
}

/// Phantom nodes in the tree over `n` elements.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_phantom_count(n: usize, out: *mut usize) -> SwStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(SwStatus::NullPointer, "out is null"));
        }
        *out = swtree::phantom_count(n).map_err(from_core)?;
        Ok(())
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn sw_status_message(status: SwStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SwStatus::Ok => c"ok",
        SwStatus::NullPointer => c"null pointer",
        SwStatus::InvalidUtf8 => c"string is not valid UTF-8",
        SwStatus::UnknownGroup => c"unknown group id",
        SwStatus::InvalidGroup => c"invalid group parameter",
        SwStatus::Empty => c"structure needs at least one element",
        SwStatus::OutOfRange => c"index or count out of range",
        SwStatus::InvalidElement => c"invalid element",
        SwStatus::BufferSize => c"buffer length does not match",
        SwStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_round_trip() {
        let g: AnyGroup = "perm:4".parse().unwrap();
        let e = decode(&g, &[2, 0, 3, 1]).unwrap();
        let mut out = [0; 4];
        encode(&e, &mut out);
        assert_eq!(out, [2, 0, 3, 1]);
        assert_eq!(decode(&g, &[0, 0, 1, 2]), Err(SwStatus::InvalidElement));
        let g: AnyGroup = "gl2:5".parse().unwrap();
        assert_eq!(decode(&g, &[1, 2, 2, 4]), Err(SwStatus::InvalidElement));
        assert_eq!(decode(&g, &[1, -1, 0, 1]), Err(SwStatus::InvalidElement));
    }
}
