use danielewski_web::{certificate_text, degree_text, normalize_text};

const B2: &str = "field = Q\nm = 1\nr = 2\nF = V^2 + T1*V\n";

#[test]
fn normalize_reports_laurent_image() {
    let out = normalize_text(B2, "T1^2*U").unwrap();
    assert_eq!(out, "t1*v + v^2\nt1*v + v^2");
    assert!(normalize_text(B2, "u +").unwrap_err().starts_with("expr:"));
}

#[test]
fn degree_with_graded_ring() {
    let out = degree_text(B2, "-1;0", "u").unwrap();
    assert!(out.starts_with("deg = 2\nell = 2\n"), "{out}");
    assert!(out.contains("gr = Q[t1, u, v]/(t1^2*u - v^2)"), "{out}");
    let out = degree_text(B2, "1;0", "u").unwrap();
    assert!(out.contains("gr: "), "{out}");
}

#[test]
fn certificate_verifies() {
    let cfg = "field = Q\nm = 1\nr = 3\nF = V^2 - 1\n";
    let out = certificate_text(cfg, "1").unwrap();
    assert!(out.ends_with("# VERIFIED\n"));
    assert_eq!(out.matches("[link ").count(), 2);
    assert!(certificate_text("field = Fp:2\nm = 1\nr = 2\nF = V^2 - 1\n", "").is_err());
}
