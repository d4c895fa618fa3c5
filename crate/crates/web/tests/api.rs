use cheeger_web::api::{candidate_at, cheeger_optimum, delaunay_profile};
use serde_json::Value;

const CYLINDER: &str = r#"{"family":"cylinder","parameters":{"l":1,"r":1},"n":3}"#;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn sphere_profile_is_a_circle() {
    let v = parse(delaunay_profile(3, 1.0, 0.0, 64));
    assert_eq!(v["class"], "Sphere");
    let pts = v["points"].as_array().unwrap();
    assert!(pts.len() > 30);
    for p in pts {
        let (x, y) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
        assert!((x.hypot(y) - 1.0).abs() < 1e-6);
    }
}

#[test]
fn optimum_close_to_reference() {
    let v = parse(cheeger_optimum(CYLINDER));
    assert!((v["h"].as_f64().unwrap() - 3.72474).abs() < 1e-3);
    assert!(!v["candidate"]["outlines"].as_array().unwrap().is_empty());
    assert!(!v["domain"].as_array().unwrap().is_empty());
}

#[test]
fn candidate_and_errors() {
    let v = parse(candidate_at(CYLINDER, 1.5));
    assert!(v["candidate"]["ratio"].as_f64().unwrap() >= 3.72474 - 1e-3);
    assert!(cheeger_optimum("{}").is_err());
    assert!(delaunay_profile(1, 1.0, 0.0, 16).is_err());
}

#[test]
fn page_families_parse() {
    let families = [
        r#"{"family":"cone","parameters":{"l":1,"theta":0.5235987756},"n":3}"#,
        r#"{"family":"double-cone","parameters":{"l":1,"r":1,"theta":1.0471975512},"n":3}"#,
        r#"{"family":"hourglass","parameters":{"A":3,"B":2,"C":0.3,"D":0.6},"n":3}"#,
        r#"{"family":"ball","parameters":{"radius":1},"n":3}"#,
    ];
    for f in families {
        let v = parse(cheeger_optimum(f));
        let i = v["interval"].as_array().unwrap();
        assert_eq!(i.len(), 2, "{f}");
        let mid = 0.5 * (i[0].as_f64().unwrap() + i[1].as_f64().unwrap());
        assert!(v["h"].as_f64().unwrap() > 0.0);
        assert!(candidate_at(f, mid).is_ok() || i[0] == i[1], "{f}");
    }
}
