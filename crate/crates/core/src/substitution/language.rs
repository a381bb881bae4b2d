use std::collections::{BTreeSet, HashSet};

use super::{is_primitive, SubstitutionRule};
use crate::error::{Error, Result};

/// Factors keyed by `(length, packed letters)`, eight bits per letter, so
/// lengths up to 16 fit.
pub type FactorSet = HashSet<(u8, u128)>;

const MAX_PACKED: usize = 16;

fn pack(w: &[u8]) -> (u8, u128) {
    let mut code = 0u128;
    for &l in w {
        code = (code << 8) | l as u128;
    }
    (w.len() as u8, code)
}

fn add_factors(set: &mut FactorSet, w: &[u8], max_len: usize) {
    for n in 1..=max_len.min(w.len()) {
        for f in w.windows(n) {
            set.insert(pack(f));
        }
    }
}

/// Factors of `w` of lengths `1..=max_len`.
pub fn factor_set(w: &[u8], max_len: usize) -> FactorSet {
    assert!(
        max_len <= MAX_PACKED,
        "factor length {max_len} above {MAX_PACKED}"
    );
    let mut set = FactorSet::new();
    add_factors(&mut set, w, max_len);
    set
}

/// Factors of `rule(w)` of lengths `1..=max_len`, without materialising the
/// image: long letter images contribute their internal factors once, and
/// only the seams between consecutive images are scanned per letter.
pub fn image_factor_set(rule: &SubstitutionRule, w: &[u8], max_len: usize) -> FactorSet {
    assert!(
        max_len <= MAX_PACKED,
        "factor length {max_len} above {MAX_PACKED}"
    );
    let keep = max_len.saturating_sub(1);
    let mut set = FactorSet::new();
    let mut internal_done = vec![false; rule.size()];
    // the last `keep` letters emitted so far
    let mut tail: Vec<u8> = Vec::new();
    for &l in w {
        let img = rule.image(l);
        if img.len() <= 2 * keep {
            let mut buf = std::mem::take(&mut tail);
            buf.extend_from_slice(img);
            add_factors(&mut set, &buf, max_len);
            let cut = buf.len().saturating_sub(keep);
            tail = buf.split_off(cut);
        } else {
            if !internal_done[l as usize] {
                add_factors(&mut set, img, max_len);
                internal_done[l as usize] = true;
            }
            let mut seam = std::mem::take(&mut tail);
            seam.extend_from_slice(&img[..keep]);
            add_factors(&mut set, &seam, max_len);
            tail = img[img.len() - keep..].to_vec();
        }
    }
    set
}

/// All length-`n` factors of the language of a primitive rule.
///
/// Every factor of `rule(w)` lies in the image of a factor of `w` that is at
/// most as long, so the set is the closure of the factors of one long enough
/// iterate under "factors of the image".
pub fn language_factors(rule: &SubstitutionRule, n: usize) -> Result<BTreeSet<Vec<u8>>> {
    if !is_primitive(rule).0 {
        return Err(Error::NotPrimitive);
    }
    let mut set = BTreeSet::new();
    if n == 0 {
        set.insert(Vec::new());
        return Ok(set);
    }
    let mut seed = vec![0u8];
    while seed.len() < n {
        seed = rule.apply_letters(&seed);
    }
    let mut todo: Vec<Vec<u8>> = Vec::new();
    for f in seed.windows(n) {
        if set.insert(f.to_vec()) {
            todo.push(f.to_vec());
        }
    }
    while let Some(u) = todo.pop() {
        let img = rule.apply_letters(&u);
        for f in img.windows(n) {
            if !set.contains(f) {
                set.insert(f.to_vec());
                todo.push(f.to_vec());
            }
        }
    }
    Ok(set)
}
