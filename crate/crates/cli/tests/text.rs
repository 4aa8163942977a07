use multicat::standard::{com, small_categories, small_multicats};
use multicat_cli::text::{
    category_doc, multicat_doc, parse, print, print_all, Bundle, Document, ErrorKind,
};

fn roundtrip(doc: &Document) {
    let once = print(doc).unwrap();
    let docs = parse(&once).unwrap_or_else(|e| panic!("{e}\n{once}"));
    assert_eq!(docs.len(), 1);
    assert_eq!(print(&docs[0]).unwrap(), once);
}

#[test]
fn standard_structures_round_trip() {
    for c in small_categories() {
        roundtrip(&category_doc(&c));
    }
    for k in 1..=3 {
        for m in small_multicats(k) {
            roundtrip(&multicat_doc(&m));
        }
    }
}

#[test]
fn parsed_tables_are_identical() {
    let m = com(3);
    let docs = parse(&print(&multicat_doc(&m)).unwrap()).unwrap();
    match &docs[0] {
        Document::Multicat(x) => assert!(x.same_tables(&m)),
        d => panic!("parsed a {}", d.kind()),
    }
}

#[test]
fn missing_composite_is_a_semantic_error() {
    let text = "multicat m truncation 2\nobject a\nmor u : () -> a\nmor p : (a,a) -> a\ncomp p (u u) = u\ncomp p (u p) = p\ncomp p (p u) = p\ncomp p (u id_a) = id_a\n";
    let e = parse(text).unwrap_err();
    assert_eq!(e.kind, ErrorKind::Semantic);
    assert!(e.message.contains("missing composite"), "{e}");
    assert!(e.message.contains("comp p (id_a u)"), "{e}");
}

#[test]
fn duplicate_object_reports_both_lines() {
    let e = parse("category c\nobject a\nobject b\nobject a\n").unwrap_err();
    assert_eq!(e.kind, ErrorKind::Semantic);
    assert_eq!((e.line, e.column), (4, 8));
    assert_eq!(e.other_line, Some(2));
    assert_eq!(e.token, "a");
    assert!(e.to_string().contains("(see line 2)"));
}

#[test]
fn unknown_object_is_semantic_and_bad_layout_is_syntax() {
    let e = parse("category c\nobject a\nmor f : a -> b\n").unwrap_err();
    assert_eq!((e.kind, e.token.as_str()), (ErrorKind::Semantic, "b"));
    let e = parse("category c\nobject a\nmor f a -> a\n").unwrap_err();
    assert_eq!(e.kind, ErrorKind::Syntax);
    let e = parse("category c\nobject a\nmor f : (a) -> a\n").unwrap_err();
    assert_eq!(e.kind, ErrorKind::Syntax);
}

#[test]
fn written_identities_are_rejected() {
    let e = parse("category c\nobject a\nmor id_a : a -> a\n").unwrap_err();
    assert_eq!(e.kind, ErrorKind::Semantic);
    let e = parse("multicat m truncation 2\nobject a\nmor p : (a,a) -> a\nact p (1 2) = p\n")
        .unwrap_err();
    assert_eq!(e.kind, ErrorKind::Semantic);
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let a = parse("# header\ncategory c # trailing\n\nobject a\n").unwrap();
    let b = parse("category c\nobject a\n").unwrap();
    assert_eq!(print_all(&a).unwrap(), print_all(&b).unwrap());
}

#[test]
fn maps_resolve_across_files_in_a_bundle() {
    let mut b = Bundle::new();
    b.add_text("one", "category x\nobject p\n").unwrap();
    b.add_text(
        "two",
        "category y\nobject q\nfunctor f : x -> y\nmap object p -> q\n",
    )
    .unwrap();
    assert!(matches!(b.get("f"), Some(Document::Functor(..))));
    let e = b.add_text("three", "category x\nobject r\n").unwrap_err();
    assert_eq!(e.source, "three");
}

#[test]
fn unmapped_objects_are_reported() {
    let e = parse("category x\nobject p\nobject r\ncategory y\nobject q\nfunctor f : x -> y\nmap object p -> q\n").unwrap_err();
    assert!(e.message.contains("`r`"), "{e}");
}
