//! C ABI over the foci library.
//!
//! Every fallible function returns a [`FociStatus`]; on failure a message is
//! available from [`foci_last_error_message`] on the same thread. Handles
//! are opaque and must be released with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use foci::data::{EgoNetwork, Question, UserWordMatrix, Vocabulary};
use foci::eval::load_ego_instance;
use foci::rank::{rank_answerers, RankedList, SimilarityMetric};
use foci::solver::{fit, FactorSet, HyperParams};
use foci::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FociStatus {
    Ok = 0,
    NullPointer = 1,
    /// A string argument was not valid UTF-8 or an index was out of range.
    InvalidArgument = 2,
    Input = 3,
    Contract = 4,
    Numeric = 5,
    OutOfVocabulary = 6,
    Parse = 7,
    Io = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FociMetric {
    Cosine = 0,
    Pcc = 1,
    Euclidean = 2,
}

impl From<FociMetric> for SimilarityMetric {
    fn from(m: FociMetric) -> Self {
        match m {
            FociMetric::Cosine => SimilarityMetric::Cosine,
            FociMetric::Pcc => SimilarityMetric::Pcc,
            FociMetric::Euclidean => SimilarityMetric::Euclidean,
        }
    }
}

/// Fit settings. Obtain defaults from [`foci_params_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FociParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub k: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl From<&FociParams> for HyperParams {
    fn from(p: &FociParams) -> Self {
        HyperParams {
            alpha: p.alpha,
            beta: p.beta,
            gamma: p.gamma,
            k: p.k,
            max_iters: p.max_iters,
            tol: p.tol,
            seed: p.seed,
            ..HyperParams::default()
        }
    }
}

/// A loaded ego network with its user-word matrix and vocabulary.
pub struct FociInstance {
    network: EgoNetwork,
    content: UserWordMatrix,
    vocab: Vocabulary,
}

/// Fitted latent factors.
pub struct FociFactors {
    inner: FactorSet,
    trace: Vec<f64>,
}

/// Candidates sorted by descending score.
pub struct FociRankedList {
    inner: RankedList,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(FociStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Input(_) | Error::Eval(_) => FociStatus::Input,
            Error::Contract(_) => FociStatus::Contract,
            Error::Numeric { .. } => FociStatus::Numeric,
            Error::OutOfVocabulary => FociStatus::OutOfVocabulary,
            Error::Parse { .. } => FociStatus::Parse,
            Error::Io { .. } => FociStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FociStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FociStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FociStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            FociStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(FociStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn out_arg<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn foci_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn foci_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn foci_params_default() -> FociParams {
    let h = HyperParams::default();
    FociParams {
        alpha: h.alpha,
        beta: h.beta,
        gamma: h.gamma,
        k: h.k,
        max_iters: h.max_iters,
        tol: h.tol,
        seed: h.seed,
    }
}

/// Loads a network TSV and a content TSV. Words used by fewer than `min_df`
/// users are dropped.
///
/// # Safety
/// `network_path` and `content_path` must be NUL-terminated strings and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn foci_instance_load(
    network_path: *const c_char,
    content_path: *const c_char,
    min_df: usize,
    out: *mut *mut FociInstance,
) -> FociStatus {
    guard(|| {
        let network = PathBuf::from(str_arg(network_path, "network_path")?);
        let content = PathBuf::from(str_arg(content_path, "content_path")?);
        let (network, content, vocab) = load_ego_instance(&network, &content, min_df)?;
        out_arg(out, FociInstance { network, content, vocab })
    })
}

/// Number of users including the asker; 0 for NULL.
///
/// # Safety
/// `instance` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn foci_instance_num_users(instance: *const FociInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.network.size())
}

/// Vocabulary size; 0 for NULL.
///
/// # Safety
/// `instance` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn foci_instance_num_words(instance: *const FociInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.vocab.len())
}

/// # Safety
/// `instance` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn foci_instance_free(instance: *mut FociInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Fits factors to `instance` from a seeded random start.
///
/// # Safety
/// `instance` and `params` must be valid pointers and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn foci_fit(
    instance: *const FociInstance,
    params: *const FociParams,
    out: *mut *mut FociFactors,
) -> FociStatus {
    guard(|| {
        let instance = ref_arg(instance, "instance")?;
        let h = HyperParams::from(ref_arg(params, "params")?);
        let (factors, trace) = fit(&instance.content, &instance.network, &h, None)?;
        out_arg(out, FociFactors { inner: factors, trace: trace.objective })
    })
}

/// Reads a factor file written by [`foci_factors_save`] or `foci fit`.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn foci_factors_load(path: *const c_char, out: *mut *mut FociFactors) -> FociStatus {
    guard(|| {
        let path = PathBuf::from(str_arg(path, "path")?);
        let inner = FactorSet::load(&path)?;
        out_arg(out, FociFactors { inner, trace: Vec::new() })
    })
}

/// # Safety
/// `factors` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn foci_factors_save(factors: *const FociFactors, path: *const c_char) -> FociStatus {
    guard(|| {
        let factors = ref_arg(factors, "factors")?;
        let path = PathBuf::from(str_arg(path, "path")?);
        Ok(factors.inner.save(&path)?)
    })
}

/// Number of foci; 0 for NULL.
///
/// # Safety
/// `factors` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn foci_factors_k(factors: *const FociFactors) -> usize {
    factors.as_ref().map_or(0, |f| f.inner.k())
}

/// Objective values recorded by [`foci_fit`], initial value first. Loaded
/// factors have an empty trace. Writes the length to `len`; the returned
/// pointer is owned by the handle.
///
/// # Safety
/// `factors` must be a live handle and `len` writable.
#[no_mangle]
pub unsafe extern "C" fn foci_factors_trace(factors: *const FociFactors, len: *mut usize) -> *const f64 {
    match (factors.as_ref(), len.as_mut()) {
        (Some(f), Some(len)) => {
            *len = f.trace.len();
            f.trace.as_ptr()
        }
        _ => ptr::null(),
    }
}

/// # Safety
/// `factors` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn foci_factors_free(factors: *mut FociFactors) {
    if !factors.is_null() {
        drop(Box::from_raw(factors));
    }
}

/// Ranks every connection of the asker for a question given as `num_words`
/// preprocessed words. Fails with `FOCI_STATUS_OUT_OF_VOCABULARY` when no
/// word is known.
///
/// # Safety
/// `instance` and `factors` must be live handles, `words` must point to
/// `num_words` NUL-terminated strings, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn foci_rank(
    instance: *const FociInstance,
    factors: *const FociFactors,
    words: *const *const c_char,
    num_words: usize,
    metric: FociMetric,
    out: *mut *mut FociRankedList,
) -> FociStatus {
    guard(|| {
        let instance = ref_arg(instance, "instance")?;
        let factors = ref_arg(factors, "factors")?;
        if words.is_null() && num_words > 0 {
            return Err(null("words"));
        }
        let mut list = Vec::with_capacity(num_words);
        for i in 0..num_words {
            list.push(str_arg(*words.add(i), "word")?.to_owned());
        }
        let question = Question::new("ffi", list, []);
        let inner = rank_answerers(&question, &factors.inner, &instance.vocab, metric.into())?;
        out_arg(out, FociRankedList { inner })
    })
}

/// Number of entries; 0 for NULL.
///
/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn foci_ranked_list_len(list: *const FociRankedList) -> usize {
    list.as_ref().map_or(0, |l| l.inner.len())
}

/// Reads entry `index` (0 = best).
///
/// # Safety
/// `list` must be a live handle; `user` and `score` must be writable.
#[no_mangle]
pub unsafe extern "C" fn foci_ranked_list_get(
    list: *const FociRankedList,
    index: usize,
    user: *mut usize,
    score: *mut f64,
) -> FociStatus {
    guard(|| {
        let list = ref_arg(list, "list")?;
        let entry = list.inner.entries().get(index).ok_or_else(|| {
            Failure(
                FociStatus::InvalidArgument,
                format!("index {index} out of range for {} entries", list.inner.len()),
            )
        })?;
        if user.is_null() || score.is_null() {
            return Err(null("output pointer"));
        }
        *user = entry.user.0;
        *score = entry.score;
        Ok(())
    })
}

/// # Safety
/// `list` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn foci_ranked_list_free(list: *mut FociRankedList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}
