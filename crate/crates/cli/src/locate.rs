//! Source positions inside JSON text, for diagnostics that serde cannot place.

/// 1-based line and column of a byte offset.
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |nl| before.len() - nl - 1) + 1;
    (line, column)
}

/// Offset of the first `"key"` that is followed by a colon.
fn key_offset(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    let mut from = 0;
    while let Some(found) = text[from..].find(&needle) {
        let at = from + found;
        let rest = text[at + needle.len()..].trim_start();
        if rest.starts_with(':') {
            return Some(at);
        }
        from = at + needle.len();
    }
    None
}

pub fn key(text: &str, key: &str) -> Option<(usize, usize)> {
    key_offset(text, key).map(|o| line_col(text, o))
}

/// Position of element `index` of the array stored under `key`.
pub fn array_element(text: &str, key: &str, index: usize) -> Option<(usize, usize)> {
    let start = key_offset(text, key)?;
    let open = start + text[start..].find('[')?;
    let bytes = text.as_bytes();
    let (mut depth, mut current, mut in_string, mut escaped) = (0usize, 0usize, false, false);
    let mut expecting = true;
    for (i, &b) in bytes.iter().enumerate().skip(open + 1) {
        if in_string {
            match b {
                _ if escaped => escaped = false,
                b'\\' => escaped = true,
                b'"' => in_string = false,
                _ => {}
            }
            continue;
        }
        if expecting && !b.is_ascii_whitespace() {
            if b == b']' && depth == 0 {
                return None;
            }
            if current == index {
                return Some(line_col(text, i));
            }
            expecting = false;
        }
        match b {
            b'"' => in_string = true,
            b'[' | b'{' => depth += 1,
            b']' | b'}' if depth == 0 => return None,
            b']' | b'}' => depth -= 1,
            b',' if depth == 0 => {
                current += 1;
                expecting = true;
            }
            _ => {}
        }
    }
    None
}
