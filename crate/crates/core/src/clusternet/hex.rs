/// Classic offset / hex / ASCII dump, 16 bytes per line.
pub fn hexdump(bytes: &[u8]) -> String {
    let mut out = String::new();
    for (line, chunk) in bytes.chunks(16).enumerate() {
        let hex: Vec<String> = chunk.iter().map(|b| format!("{b:02x}")).collect();
        let ascii: String = chunk.iter().map(|&b| if b.is_ascii_graphic() { b as char } else { '.' }).collect();
        out.push_str(&format!("{:08x}  {:<47}  |{}|\n", line * 16, hex.join(" "), ascii));
    }
    out
}

/// Parses whitespace-separated hex bytes; `#` starts a comment.
pub fn parse_hex(text: &str) -> Result<Vec<u8>, String> {
    let mut digits = String::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        digits.extend(line.chars().filter(|c| !c.is_whitespace()));
    }
    if !digits.len().is_multiple_of(2) {
        return Err(format!("odd number of hex digits ({})", digits.len()));
    }
    (0..digits.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&digits[i..i + 2], 16).map_err(|e| format!("bad hex `{}`: {e}", &digits[i..i + 2])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_and_parse() {
        let bytes = [0x00, 0x01, 0x41, 0xff];
        assert_eq!(hexdump(&bytes), format!("00000000  {:<47}  |..A.|\n", "00 01 41 ff"));
        assert_eq!(parse_hex("00 01 # id\n41ff").unwrap(), bytes);
        assert!(parse_hex("0").is_err());
        assert!(parse_hex("zz").is_err());
    }
}
