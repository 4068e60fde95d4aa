//! Forgiving scanner for rendered HTML fragments.
//!
//! Keeps a stack of open elements. End tags close the nearest matching open
//! element (and everything opened after it); stray end tags are ignored and
//! anything still open at the end of input is closed implicitly.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event<'a> {
    Open(String),
    Close(String),
    Text(&'a str),
}

const VOID_ELEMENTS: &[&str] = &[
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "source",
    "track", "wbr",
];

/// Splits `html` into open/close/text events. Comments, doctypes and
/// processing instructions are dropped. Void and self-closing elements emit
/// an `Open` immediately followed by a `Close`.
pub fn events(html: &str) -> Vec<Event<'_>> {
    let bytes = html.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    let mut text_start = 0;
    while pos < bytes.len() {
        if bytes[pos] != b'<' {
            pos += 1;
            continue;
        }
        let Some(tag) = scan_tag(html, pos) else {
            pos += 1;
            continue;
        };
        if text_start < pos {
            out.push(Event::Text(&html[text_start..pos]));
        }
        match tag.kind {
            TagKind::Open { self_closing } => {
                let void = self_closing || VOID_ELEMENTS.contains(&tag.name.as_str());
                out.push(Event::Open(tag.name.clone()));
                if void {
                    out.push(Event::Close(tag.name));
                }
            }
            TagKind::Close => out.push(Event::Close(tag.name)),
            TagKind::Ignored => {}
        }
        pos = tag.end;
        text_start = pos;
    }
    if text_start < bytes.len() {
        out.push(Event::Text(&html[text_start..]));
    }
    out
}

enum TagKind {
    Open { self_closing: bool },
    Close,
    Ignored,
}

struct Tag {
    name: String,
    kind: TagKind,
    end: usize,
}

fn scan_tag(html: &str, start: usize) -> Option<Tag> {
    let bytes = html.as_bytes();
    let rest = &html[start..];
    if rest.starts_with("<!--") {
        let end = rest.find("-->").map(|i| start + i + 3).unwrap_or(bytes.len());
        return Some(Tag {
            name: String::new(),
            kind: TagKind::Ignored,
            end,
        });
    }
    let next = *bytes.get(start + 1)?;
    if next == b'!' || next == b'?' {
        let end = rest.find('>').map(|i| start + i + 1)?;
        return Some(Tag {
            name: String::new(),
            kind: TagKind::Ignored,
            end,
        });
    }
    let (closing, name_start) = if next == b'/' {
        (true, start + 2)
    } else {
        (false, start + 1)
    };
    if !bytes.get(name_start)?.is_ascii_alphabetic() {
        return None;
    }
    let mut i = name_start;
    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'-') {
        i += 1;
    }
    let name = html[name_start..i].to_ascii_lowercase();
    // find the closing '>' while honouring quoted attribute values
    let mut quote: Option<u8> = None;
    let mut j = i;
    while j < bytes.len() {
        let b = bytes[j];
        match quote {
            Some(q) if b == q => quote = None,
            Some(_) => {}
            None if b == b'"' || b == b'\'' => quote = Some(b),
            None if b == b'>' => break,
            None => {}
        }
        j += 1;
    }
    if j >= bytes.len() {
        return None;
    }
    let kind = if closing {
        TagKind::Close
    } else {
        TagKind::Open {
            self_closing: j > i && bytes[j - 1] == b'/',
        }
    };
    Some(Tag { name, kind, end: j + 1 })
}

/// Stack of open element names, fed one event at a time.
#[derive(Debug, Default)]
pub struct OpenElements {
    stack: Vec<String>,
}

impl OpenElements {
    /// Applies an event. For a close event returns the names that were
    /// closed, innermost first.
    pub fn apply(&mut self, event: &Event<'_>) -> Vec<String> {
        match event {
            Event::Open(name) => {
                self.stack.push(name.clone());
                Vec::new()
            }
            Event::Close(name) => match self.stack.iter().rposition(|n| n == name) {
                Some(idx) => {
                    let mut closed = self.stack.split_off(idx);
                    closed.reverse();
                    closed
                }
                None => Vec::new(),
            },
            Event::Text(_) => Vec::new(),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.stack.iter().any(|n| n == name)
    }

    pub fn depth_of(&self, name: &str) -> usize {
        self.stack.iter().filter(|n| n.as_str() == name).count()
    }
}

/// True iff a `<code>` element is opened while some `<pre>` is open.
pub fn has_block_code(body_html: &str) -> bool {
    let mut open = OpenElements::default();
    for ev in events(body_html) {
        if let Event::Open(name) = &ev {
            if name == "code" && open.contains("pre") {
                return true;
            }
        }
        open.apply(&ev);
    }
    false
}

/// Decodes the common character references. Unknown references are kept
/// verbatim.
pub fn decode_entities(text: &str) -> String {
    if !text.contains('&') {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        let tail = &rest[amp..];
        match tail.find(';').filter(|&semi| semi <= 10) {
            Some(semi) => match decode_one(&tail[1..semi]) {
                Some(ch) => {
                    out.push(ch);
                    rest = &tail[semi + 1..];
                }
                None => {
                    out.push('&');
                    rest = &tail[1..];
                }
            },
            None => {
                out.push('&');
                rest = &tail[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

fn decode_one(name: &str) -> Option<char> {
    match name {
        "lt" => Some('<'),
        "gt" => Some('>'),
        "amp" => Some('&'),
        "quot" => Some('"'),
        "apos" => Some('\''),
        "nbsp" => Some(' '),
        _ => {
            let num = name.strip_prefix('#')?;
            let code = match num.strip_prefix(['x', 'X']) {
                Some(hex) => u32::from_str_radix(hex, 16).ok()?,
                None => num.parse().ok()?,
            };
            char::from_u32(code)
        }
    }
}
