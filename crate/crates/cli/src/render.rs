use groupoid_homology::abelian::{AbHom, FgAbGroup};
use groupoid_homology::sequences::{verify_exactness, LongExactSequence, Role, UctSequence};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

pub fn group(g: &FgAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(big).collect::<Vec<_>>(),
    })
}

fn matrix(h: &AbHom) -> Value {
    let m = h.matrix();
    Value::from(
        (0..m.rows())
            .map(|i| Value::from(m.row(i).iter().map(big).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

pub fn degrees(groups: &[FgAbGroup]) -> Value {
    let mut map = Map::new();
    for (n, g) in groups.iter().enumerate() {
        map.insert(n.to_string(), group(g));
    }
    Value::Object(map)
}

pub fn table(title: &str, prefix: &str, groups: &[FgAbGroup]) -> String {
    let mut s = format!("{title}\n");
    for (n, g) in groups.iter().enumerate() {
        s.push_str(&format!("{prefix}{n:<4} {g}\n"));
    }
    s
}

pub fn uct_text(u: &UctSequence, labels: [&str; 3]) -> String {
    let mut s = format!("degree {}, coefficients {}\n", u.degree, u.coefficients);
    for (name, label, g) in [("left", labels[0], &u.left), ("middle", labels[1], &u.middle), ("right", labels[2], &u.right)] {
        s.push_str(&format!("{name:<7} {label:<14} {g}\n"));
    }
    s.push_str(&format!("middle = {} + {}\n", u.left, u.right));
    s
}

pub fn uct_json(command: &str, u: &UctSequence) -> Value {
    json!({
        "command": command,
        "degree": u.degree,
        "coefficients": u.coefficients.to_string(),
        "left": group(&u.left),
        "middle": group(&u.middle),
        "right": group(&u.right),
    })
}

fn role_name(r: Role) -> &'static str {
    match r {
        Role::Sub => "sub",
        Role::Mid => "mid",
        Role::Quot => "quot",
    }
}

pub fn les_text(les: &LongExactSequence) -> String {
    let exact = verify_exactness(les).is_empty();
    let mut s = les.to_string();
    let zero = les.connecting_maps().iter().all(|(_, m)| m.is_zero());
    s.push_str(&format!(
        "exact: {}\nconnecting maps: {}\n",
        if exact { "yes" } else { "no" },
        if zero { "all zero" } else { "some nonzero" }
    ));
    s
}

pub fn les_json(command: &str, les: &LongExactSequence) -> Value {
    let nodes: Vec<Value> = les
        .nodes()
        .iter()
        .map(|x| {
            json!({
                "degree": x.degree,
                "role": role_name(x.role),
                "label": les.label(x.role),
                "group": group(&x.group),
            })
        })
        .collect();
    let maps: Vec<Value> = les
        .maps()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            json!({
                "from": k,
                "to": k + 1,
                "kind": if les.nodes()[k].role == Role::Quot { "connecting" } else { "induced" },
                "zero": m.is_zero(),
                "matrix": matrix(m),
            })
        })
        .collect();
    json!({
        "command": command,
        "exact": verify_exactness(les).is_empty(),
        "nodes": nodes,
        "maps": maps,
    })
}
