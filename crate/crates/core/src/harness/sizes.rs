//! Size lists such as `1..130,255,1024`. Ranges are inclusive.

use super::HarnessError;

pub fn parse_sizes(list: &str) -> Result<Vec<usize>, HarnessError> {
    let fail = |msg: &str| HarnessError::Sizes(list.to_string(), msg.to_string());
    let mut sizes = Vec::new();
    for part in list.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(fail("empty entry"));
        }
        let number = |s: &str| s.trim().parse::<usize>().map_err(|e| fail(&e.to_string()));
        match part.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (number(lo)?, number(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(fail("range start exceeds its end"));
                }
                sizes.extend(lo..=hi);
            }
            None => sizes.push(number(part)?),
        }
    }
    if sizes.contains(&0) {
        return Err(fail("sizes must be at least 1"));
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lists_and_ranges() {
        assert_eq!(parse_sizes("1").unwrap(), vec![1]);
        assert_eq!(parse_sizes("1..3, 8").unwrap(), vec![1, 2, 3, 8]);
        assert_eq!(parse_sizes("4..=5").unwrap(), vec![4, 5]);
        assert_eq!(parse_sizes("1..130").unwrap().len(), 130);
        for bad in ["", "0", "3..1", "a", "1,,2", "0..4"] {
            assert!(parse_sizes(bad).is_err(), "{bad}");
        }
    }
}
