//! Process memory figures from `/proc` (Linux only; `None` elsewhere).

use std::fs;

fn meminfo_field(text: &str, key: &str) -> Option<u64> {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .and_then(|rest| rest.trim().trim_end_matches("kB").trim().parse::<u64>().ok())
        .map(|kb| kb * 1024)
}

/// `MemAvailable` from `/proc/meminfo`, in bytes.
pub fn available_memory() -> Option<u64> {
    let text = fs::read_to_string("/proc/meminfo").ok()?;
    meminfo_field(&text, "MemAvailable:")
}

/// Current resident set size, in bytes.
pub fn current_rss() -> Option<u64> {
    let text = fs::read_to_string("/proc/self/status").ok()?;
    meminfo_field(&text, "VmRSS:")
}

/// Peak resident set size since start or the last [`reset_peak_rss`].
pub fn peak_rss() -> Option<u64> {
    let text = fs::read_to_string("/proc/self/status").ok()?;
    meminfo_field(&text, "VmHWM:")
}

/// Resets the kernel's peak-RSS watermark to the current RSS.
pub fn reset_peak_rss() -> bool {
    fs::write("/proc/self/clear_refs", "5").is_ok()
}

/// Asks for transparent huge pages over the whole pages inside
/// `[ptr, ptr + len)`. Advisory: ignored where unsupported, and a failure
/// only costs speed.
pub(crate) fn advise_huge_pages(ptr: *mut u8, len: usize) {
    #[cfg(target_os = "linux")]
    {
        const PAGE: usize = 4096;
        let start = (ptr as usize).div_ceil(PAGE) * PAGE;
        let end = (ptr as usize + len) / PAGE * PAGE;
        if end > start {
            // SAFETY: the range lies inside one live allocation; MADV_HUGEPAGE
            // does not change its contents or validity.
            unsafe {
                libc::madvise(start as *mut libc::c_void, end - start, libc::MADV_HUGEPAGE);
            }
        }
    }
    #[cfg(not(target_os = "linux"))]
    let _ = (ptr, len);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_meminfo_lines() {
        let text = "MemTotal:       16318788 kB\nMemAvailable:    8000000 kB\n";
        assert_eq!(meminfo_field(text, "MemAvailable:"), Some(8_000_000 * 1024));
        assert_eq!(meminfo_field(text, "Nope:"), None);
    }
}
