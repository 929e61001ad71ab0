//! Line-oriented text format for instances.
//!
//! ```text
//! NAME <text>
//! CAPACITY <number>
//! BATTERY <number>
//! CONSUMPTION <number>
//! NODES <count>
//! <id> <D|C|S> <x> <y> <demand>
//! EOF
//! ```
//!
//! `#` starts a comment. Header keywords may appear in any order before
//! `NODES`; each exactly once.

use std::fmt::Write as _;

use super::{Instance, Node, NodeKind, DEPOT};
use crate::error::{ParseError, ParseErrorKind};
use crate::Scalar;

type Kind = ParseErrorKind;

fn number<T: Scalar>(line: usize, field: &str) -> Result<T, ParseError> {
    field
        .parse::<T>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ParseError::new(line, Kind::NonNumericField(field.to_string())))
}

fn integer(line: usize, field: &str) -> Result<usize, ParseError> {
    field
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, Kind::NonNumericField(field.to_string())))
}

fn header(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, Kind::MalformedHeader(msg.into()))
}

struct Header<T> {
    name: Option<String>,
    capacity: Option<T>,
    battery: Option<T>,
    consumption: Option<T>,
}

/// Parses and validates an instance.
pub fn parse_instance<T: Scalar>(text: &str) -> Result<Instance<T>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut head = Header::<T> {
        name: None,
        capacity: None,
        battery: None,
        consumption: None,
    };
    let mut last_line = 0;
    let (nodes_line, count) = loop {
        let Some((ln, l)) = lines.next() else {
            return Err(header(last_line.max(1), "missing NODES section"));
        };
        last_line = ln;
        let (keyword, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        let single = |ln| {
            let mut it = rest.split_whitespace();
            match (it.next(), it.next()) {
                (Some(v), None) => Ok(v),
                _ => Err(header(ln, format!("{keyword} takes exactly one value"))),
            }
        };
        let dup = |ln| header(ln, format!("duplicate {keyword}"));
        match keyword {
            "NAME" => {
                if rest.is_empty() {
                    return Err(header(ln, "NAME is empty"));
                }
                if head.name.replace(rest.to_string()).is_some() {
                    return Err(dup(ln));
                }
            }
            "CAPACITY" | "BATTERY" | "CONSUMPTION" => {
                let value: T = number(ln, single(ln)?)?;
                if value <= T::zero() {
                    return Err(header(ln, format!("{keyword} must be positive")));
                }
                let slot = match keyword {
                    "CAPACITY" => &mut head.capacity,
                    "BATTERY" => &mut head.battery,
                    _ => &mut head.consumption,
                };
                if slot.replace(value).is_some() {
                    return Err(dup(ln));
                }
            }
            "NODES" => break (ln, integer(ln, single(ln)?)?),
            other => return Err(header(ln, format!("unexpected keyword `{other}`"))),
        }
    };

    let missing = |what: &str| header(nodes_line, format!("missing {what}"));
    let name = head.name.ok_or_else(|| missing("NAME"))?;
    let capacity = head.capacity.ok_or_else(|| missing("CAPACITY"))?;
    let battery = head.battery.ok_or_else(|| missing("BATTERY"))?;
    let consumption = head.consumption.ok_or_else(|| missing("CONSUMPTION"))?;

    let mut slots: Vec<Option<Node<T>>> = vec![None; count];
    let mut depot_seen = false;
    for _ in 0..count {
        let (ln, l) = match lines.next() {
            Some((ln, "EOF")) => return Err(header(ln, format!("expected {count} node lines"))),
            Some(line) => line,
            None => return Err(header(last_line, format!("expected {count} node lines"))),
        };
        last_line = ln;
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(ParseError::new(
                ln,
                Kind::InvalidNode(format!("expected 5 fields, found {}", fields.len())),
            ));
        }
        let id = integer(ln, fields[0])?;
        let kind = NodeKind::from_code(fields[1])
            .ok_or_else(|| ParseError::new(ln, Kind::UnknownNodeKind(fields[1].to_string())))?;
        let x = number::<T>(ln, fields[2])?;
        let y = number::<T>(ln, fields[3])?;
        let demand = number::<T>(ln, fields[4])?;
        let bad = |msg: &str| Err(ParseError::new(ln, Kind::InvalidNode(msg.to_string())));

        if id >= count {
            return bad("id outside 0..NODES");
        }
        if slots[id].is_some() {
            return Err(ParseError::new(ln, Kind::DuplicateNodeId(id)));
        }
        match kind {
            NodeKind::Depot => {
                if depot_seen {
                    return Err(ParseError::new(ln, Kind::MultipleDepots));
                }
                depot_seen = true;
                if id != DEPOT {
                    return bad("the depot must be node 0");
                }
            }
            _ if id == DEPOT => return bad("node 0 must be the depot"),
            _ => {}
        }
        match kind {
            NodeKind::Customer if demand <= T::zero() => {
                return bad("customer demand must be positive")
            }
            NodeKind::Customer if demand > capacity => {
                return Err(ParseError::new(ln, Kind::DemandExceedsCapacity { id }))
            }
            NodeKind::Depot | NodeKind::Station if demand != T::zero() => {
                return bad("depot and station demand must be 0")
            }
            _ => {}
        }
        slots[id] = Some(Node::new(id, kind, x, y, demand));
    }

    let eof_line = match lines.next() {
        Some((ln, "EOF")) => ln,
        Some((ln, other)) => return Err(header(ln, format!("expected EOF, found `{other}`"))),
        None => return Err(header(last_line, "missing EOF")),
    };
    if let Some((ln, _)) = lines.next() {
        return Err(header(ln, "content after EOF"));
    }
    if !depot_seen {
        return Err(ParseError::new(eof_line, Kind::NoDepot));
    }
    let nodes: Vec<Node<T>> = slots.into_iter().flatten().collect();
    if !nodes.iter().any(|n| n.kind == NodeKind::Customer) {
        return Err(header(nodes_line, "instance has no customers"));
    }
    Ok(Instance::build(name, nodes, battery, consumption, capacity))
}

/// Writes an instance in the text format. Coordinates use 6 decimals; the
/// other numbers use the shortest representation that parses back exactly.
pub fn serialize_instance<T: Scalar>(instance: &Instance<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME {}", instance.name());
    let _ = writeln!(out, "CAPACITY {}", instance.cargo_capacity());
    let _ = writeln!(out, "BATTERY {}", instance.battery_capacity());
    let _ = writeln!(out, "CONSUMPTION {}", instance.consumption_rate());
    let _ = writeln!(out, "NODES {}", instance.node_count());
    for n in instance.nodes() {
        let _ = writeln!(
            out,
            "{} {} {:.6} {:.6} {}",
            n.id,
            n.kind.code(),
            n.x,
            n.y,
            n.demand
        );
    }
    out.push_str("EOF\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
# three-node sample
NAME tiny
CAPACITY 10
BATTERY 12
CONSUMPTION 1
NODES 3
0 D 0 0 0
1 C 0 3 1
2 C 4 0 1   # trailing comment
EOF
";

    fn err(text: &str) -> ParseError {
        parse_instance::<f64>(text).unwrap_err()
    }

    #[test]
    fn parses_minimal_file() {
        let inst = parse_instance::<f64>(MINIMAL).unwrap();
        assert_eq!(inst.name(), "tiny");
        assert_eq!(inst.node_count(), 3);
        assert_eq!(inst.battery_capacity(), 12.0);
        assert_eq!(inst.cargo_capacity(), 10.0);
        assert_eq!(inst.consumption_rate(), 1.0);
        assert_eq!(inst.customers(), &[1, 2]);
        assert!(inst.stations().is_empty());
        assert_eq!(inst.node(1).unwrap().y, 3.0);
    }

    #[test]
    fn parses_as_f32() {
        let inst = parse_instance::<f32>(MINIMAL).unwrap();
        assert_eq!(inst.distance(1, 2).unwrap(), 5.0f32);
    }

    #[test]
    fn empty_text_is_malformed_header() {
        assert!(matches!(err("").kind, Kind::MalformedHeader(_)));
        assert!(matches!(
            err("# only a comment\n").kind,
            Kind::MalformedHeader(_)
        ));
    }

    #[test]
    fn duplicate_node_id_names_line() {
        let text = MINIMAL.replace("2 C 4 0 1", "1 C 4 0 1");
        assert_eq!(err(&text), ParseError::new(9, Kind::DuplicateNodeId(1)));
    }

    #[test]
    fn header_errors() {
        let dup = MINIMAL.replace("BATTERY 12", "BATTERY 12\nBATTERY 13");
        assert_eq!(err(&dup).line, 5);
        assert!(matches!(err(&dup).kind, Kind::MalformedHeader(_)));

        let missing = MINIMAL.replace("CONSUMPTION 1\n", "");
        assert!(matches!(err(&missing).kind, Kind::MalformedHeader(_)));

        let no_eof = MINIMAL.replace("EOF\n", "");
        assert!(matches!(err(&no_eof).kind, Kind::MalformedHeader(_)));

        let trailing = format!("{MINIMAL}NAME again\n");
        assert!(matches!(err(&trailing).kind, Kind::MalformedHeader(_)));

        let bad_num = MINIMAL.replace("BATTERY 12", "BATTERY twelve");
        assert_eq!(
            err(&bad_num),
            ParseError::new(4, Kind::NonNumericField("twelve".into()))
        );

        let bad_count = MINIMAL.replace("NODES 3", "NODES 3.5");
        assert_eq!(
            err(&bad_count),
            ParseError::new(6, Kind::NonNumericField("3.5".into()))
        );
    }

    #[test]
    fn node_errors() {
        let kind = MINIMAL.replace("2 C 4 0 1", "2 X 4 0 1");
        assert_eq!(
            err(&kind),
            ParseError::new(9, Kind::UnknownNodeKind("X".into()))
        );

        let depots = MINIMAL.replace("2 C 4 0 1", "2 D 4 0 0");
        assert_eq!(err(&depots), ParseError::new(9, Kind::MultipleDepots));

        let station_at_zero = MINIMAL.replace("0 D 0 0 0", "0 S 0 0 0");
        assert!(matches!(err(&station_at_zero).kind, Kind::InvalidNode(_)));

        let heavy = MINIMAL.replace("1 C 0 3 1", "1 C 0 3 11");
        assert_eq!(
            err(&heavy),
            ParseError::new(8, Kind::DemandExceedsCapacity { id: 1 })
        );

        let nan = MINIMAL.replace("1 C 0 3 1", "1 C abc 3 1");
        assert_eq!(
            err(&nan),
            ParseError::new(8, Kind::NonNumericField("abc".into()))
        );

        let few = MINIMAL.replace("NODES 3", "NODES 4");
        assert!(matches!(err(&few).kind, Kind::MalformedHeader(_)));
    }

    #[test]
    fn missing_depot_is_no_depot() {
        let text =
            "NAME a\nCAPACITY 5\nBATTERY 5\nCONSUMPTION 1\nNODES 2\n1 C 0 0 1\n0 X 0 0 0\nEOF\n";
        assert!(matches!(err(text).kind, Kind::UnknownNodeKind(_)));
        let text = "NAME a\nCAPACITY 5\nBATTERY 5\nCONSUMPTION 1\nNODES 1\n# none\nEOF\n";
        assert!(matches!(err(text).kind, Kind::MalformedHeader(_)));
        let text = "NAME a\nCAPACITY 5\nBATTERY 5\nCONSUMPTION 1\nNODES 0\nEOF\n";
        assert_eq!(err(text), ParseError::new(6, Kind::NoDepot));
    }

    #[test]
    fn serialize_round_trips() {
        let inst = parse_instance::<f64>(MINIMAL).unwrap();
        let text = serialize_instance(&inst);
        assert!(text.contains("1 C 0.000000 3.000000 1\n"));
        assert_eq!(parse_instance::<f64>(&text).unwrap(), inst);
    }
}
