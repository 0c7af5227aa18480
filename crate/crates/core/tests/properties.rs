mod support;

macro_rules! property {
    ($name:ident) => {
        #[test]
        fn $name() {
            support::$name().unwrap();
        }
    };
}

property!(ultrametric);
property!(gauss_norm);
property!(nesting);
property!(image_containment);
property!(degree_sums);
property!(tree_metric);
property!(reduction_commutes);
property!(isometry);
