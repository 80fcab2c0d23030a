use hyperspec::classify::{admissibility, structure_report, Admissibility, Category};
use hyperspec::families::{build, Attachment, FamilySpec, Forbidden, SmithKind, SpineItem};

fn desk_specs() -> Vec<FamilySpec> {
    use FamilySpec::*;
    let mut v = vec![];
    for r in 3..=5 {
        for n in 1..=8 {
            v.push(Path { r, n });
            v.push(Star { r, k: n.min(4) });
            if n >= 3 {
                v.push(Cycle { r, n });
            }
        }
        v.push(C2 { r });
    }
    v.push(EdgeStar { r: 5 });
    for m in 1..=4 {
        for n in m..=5 {
            for k in n..=8 {
                v.push(F3 { m, n, k });
            }
        }
    }
    for i in 1..=3 {
        for j in i..=3 {
            for k in j..=5 {
                for l in k..=8 {
                    v.push(Dagger4 { i, j, k, l });
                }
            }
        }
    }
    for (m1, m2, m3) in [(1, 1, 1), (1, 2, 3), (2, 2, 2), (3, 4, 5)] {
        v.push(Theta { m1, m2, m3 });
    }
    for n in 3..=8 {
        v.push(ClosedQuipu3 { n, attachments: vec![Attachment { position: 0, length: 2 }] });
        v.push(ClosedQuipu3 {
            n,
            attachments: vec![Attachment { position: 0, length: 1 }, Attachment { position: n / 2, length: 3 }],
        });
        v.push(Forbidden(self::Forbidden::CnPlus3 { n }));
        v.push(Forbidden(self::Forbidden::C4NPlus { n }));
        v.push(Forbidden(self::Forbidden::H1_3 { n }));
    }
    v.push(OpenQuipu3 {
        spine: vec![
            SpineItem::Vertex { hang: 2 },
            SpineItem::Edge { hangs: vec![1] },
            SpineItem::plain(),
            SpineItem::Edge { hangs: vec![4] },
            SpineItem::plain(),
        ],
    });
    v.push(OpenQuipu4 {
        spine: vec![
            SpineItem::plain(),
            SpineItem::Edge { hangs: vec![1, 1] },
            SpineItem::plain(),
            SpineItem::Edge { hangs: vec![2] },
            SpineItem::plain(),
        ],
    });
    for kind in [SmithKind::A, SmithKind::D] {
        v.push(Smith { kind, n: 8 });
        v.push(SmithTilde { kind, n: 8 });
    }
    v.push(Forbidden(self::Forbidden::S5_3));
    v.push(Forbidden(self::Forbidden::S4Plus3));
    v.push(Forbidden(self::Forbidden::S5Prime5));
    v.push(Forbidden(self::Forbidden::S5Plus5));
    v
}

#[test]
fn no_family_instance_contradicts_the_theorems() {
    let mut seen = 0;
    for spec in desk_specs() {
        let Ok(built) = build(&spec) else { continue };
        let h = built.into_hypergraph();
        let rep = admissibility(&h, 1e-9).unwrap();
        assert_ne!(rep.verdict, Admissibility::TheoremViolation, "{spec:?}: {:?}", rep.structure);
        seen += 1;
    }
    assert!(seen > 300, "only {seen} instances built");
}

#[test]
fn extensions_are_reducible() {
    for spec in desk_specs() {
        let Ok(built) = build(&spec) else { continue };
        let h = built.into_hypergraph();
        let rep = structure_report(&h.extend());
        // C_2 stays non-simple and its reduction would repeat an edge
        let want = if h.is_simple() { Category::Reducible } else { Category::TwoCycle };
        assert_eq!(rep.category, want, "{spec:?}");
    }
}
