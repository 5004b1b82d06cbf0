use proptest::prelude::*;
use qdefect::formats::{parse_bundle, parse_matrix, write_bundle, write_matrix, FormatError};
use qdefect_core::css::CssCode;
use qdefect_core::f2::{BitMatrix, BitVector};

fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
    (0usize..6, 1usize..24).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows)
            .prop_map(move |bits| {
                let rows = bits
                    .into_iter()
                    .map(|r| {
                        let mut v = BitVector::zeros(cols);
                        for (i, b) in r.into_iter().enumerate() {
                            v.set(i, b);
                        }
                        v
                    })
                    .collect();
                BitMatrix::from_rows(rows, cols).unwrap()
            })
    })
}

/// A CSS pair by construction: Z checks drawn from the kernel of P.
fn arb_css() -> impl Strategy<Value = CssCode> {
    (arb_matrix(), any::<u64>()).prop_map(|(p, pick)| {
        let kernel = p.kernel_basis();
        let rows: Vec<BitVector> = kernel
            .rows()
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> (i % 64) & 1 == 1)
            .map(|(_, r)| r.clone())
            .collect();
        let q = BitMatrix::from_rows(rows, p.n_cols()).unwrap();
        CssCode::new(p, q).unwrap()
    })
}

proptest! {
    #[test]
    fn matrix_write_parse_is_identity(m in arb_matrix()) {
        let text = write_matrix(&m);
        prop_assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn bundle_write_parse_is_identity(code in arb_css()) {
        let text = write_bundle("prop", &code);
        let bundle = parse_bundle(&text).unwrap();
        prop_assert_eq!(&bundle.name, "prop");
        prop_assert_eq!(&bundle.code, &code);
    }

    #[test]
    fn writes_are_canonical(m in arb_matrix()) {
        // Re-serializing the parse reproduces the exact bytes.
        let text = write_matrix(&m);
        prop_assert_eq!(write_matrix(&parse_matrix(&text).unwrap()), text);
    }
}

#[test]
fn rejects_short_files_and_trailing_garbage() {
    assert!(matches!(
        parse_matrix("3 4\n0\n1\n"),
        Err(FormatError::Syntax { .. })
    ));
    assert!(matches!(
        parse_matrix("1 4\n0\n3\n"),
        Err(FormatError::Syntax { line: 3, .. })
    ));
    assert!(matches!(
        parse_bundle("css x\nn 2\nX 0 2\nZ 0 2\n1 1\n"),
        Err(FormatError::Syntax { .. })
    ));
}

#[test]
fn rejects_unsorted_and_repeated_indices() {
    assert!(matches!(
        parse_matrix("1 4\n2 1\n"),
        Err(FormatError::Syntax { line: 2, .. })
    ));
    assert!(matches!(
        parse_matrix("1 4\n1 1\n"),
        Err(FormatError::Syntax { line: 2, .. })
    ));
}

#[test]
fn block_width_must_match_declared_n() {
    let err = parse_bundle("css x\nn 3\nX 1 2\n0\nZ 1 3\n\n").unwrap_err();
    assert!(matches!(err, FormatError::Syntax { line: 3, .. }), "{err}");
}
