//! Test-case reduction for failing operation sequences.

/// Shortest prefix of `items` that still fails, assuming failure is
/// monotone in the prefix length (it is for replay mismatches: a longer
/// prefix still contains the mismatching operation).
pub fn shortest_failing_prefix<T>(items: &[T], mut fails: impl FnMut(&[T]) -> bool) -> usize {
    let (mut lo, mut hi) = (0, items.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if fails(&items[..mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    hi
}

/// Bisects to the shortest failing prefix, then repeatedly drops chunks of
/// halving size while `fails` stays true. `fails(items)` must hold on entry.
pub fn shrink<T: Clone>(items: &[T], mut fails: impl FnMut(&[T]) -> bool) -> Vec<T> {
    let cut = shortest_failing_prefix(items, &mut fails);
    let mut current = items[..cut].to_vec();
    let mut chunk = (current.len() / 2).max(1);
    loop {
        let mut removed = false;
        let mut start = 0;
        while start < current.len() {
            let end = (start + chunk).min(current.len());
            let candidate: Vec<T> = current[..start]
                .iter()
                .chain(&current[end..])
                .cloned()
                .collect();
            if fails(&candidate) {
                current = candidate;
                removed = true;
            } else {
                start = end;
            }
        }
        if !removed {
            if chunk == 1 {
                return current;
            }
            chunk /= 2;
        }
    }
}
