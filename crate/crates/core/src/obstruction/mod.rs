//! Lifting obstructions for finite subgroups of `PGL(2)` and the Amitsur
//! subgroup of the diagonal action on `P¹ × P¹`.

pub mod binary;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cohomology::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::groups::{catalog, iso_type, order_bound, quotient, subgroups, GroupLiteral, IsoType, PermGroup};

/// A central extension `1 → C2 → total → quotient → 1`.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    pub total: PermGroup,
    /// Element index of the central involution.
    pub center_elt: usize,
    pub quotient_type: IsoType,
}

impl CentralExtension {
    /// Validates centrality, the order of `center_elt` and the quotient type.
    pub fn new(total: PermGroup, center_elt: usize, quotient_type: IsoType) -> Result<Self> {
        if center_elt >= total.order() || total.element_order(center_elt) != 2 {
            return Err(Error::InvalidExtension("center element must be an involution".into()));
        }
        let z = total.element(center_elt).clone();
        if !total.generators().iter().all(|g| g.compose(&z) == z.compose(g)) {
            return Err(Error::InvalidExtension("center element is not central".into()));
        }
        let found = Self::quotient_of(&total, center_elt)?;
        if found != quotient_type {
            return Err(Error::InvalidExtension(format!(
                "quotient is {found}, expected {quotient_type}"
            )));
        }
        Ok(Self {
            total,
            center_elt,
            quotient_type,
        })
    }

    fn quotient_of(total: &PermGroup, center_elt: usize) -> Result<IsoType> {
        let z = total.subgroup_generated(&[center_elt]);
        let (q, _) = quotient(total, &z)?;
        Ok(iso_type(&q))
    }

    /// `A × C2` with the second factor as center.
    pub fn trivial_over(a: &PermGroup) -> Result<Self> {
        let total = PermGroup::direct_product(a, &catalog::cyclic(2));
        let z = total
            .elements()
            .iter()
            .position(|e| {
                (0..a.degree()).all(|i| e.apply(i) == i) && !e.is_identity()
            })
            .expect("second factor");
        Self::new(total, z, iso_type(a))
    }

    /// The unique involution, when there is exactly one.
    fn with_unique_involution(total: PermGroup, base: IsoType) -> Result<Self> {
        let inv: Vec<usize> = (0..total.order())
            .filter(|&i| total.element_order(i) == 2)
            .collect();
        match inv.as_slice() {
            [z] => Self::new(total, *z, base),
            _ => Err(Error::InvalidExtension("expected a unique involution".into())),
        }
    }
}

/// Whether the extension becomes split after pushing the center into `C*`,
/// i.e. the central involution is not a product of commutators.
///
/// This is the triviality of the obstruction class in `H²(quotient, C*)`.
pub fn extension_splits(ext: &CentralExtension) -> Result<bool> {
    let bound = order_bound();
    if ext.total.order() > bound {
        return Err(Error::OrderBoundExceeded { bound });
    }
    let derived = ext.total.derived_subgroup();
    Ok(!derived.contains(ext.total.element(ext.center_elt)))
}

/// Whether some subgroup of index 2 avoids the center (a complement to `C2`).
pub fn has_complement(ext: &CentralExtension) -> Result<bool> {
    let z = ext.total.element(ext.center_elt);
    Ok(subgroups(&ext.total, Some(2))?
        .iter()
        .any(|h| 2 * h.order() == ext.total.order() && !h.contains(z)))
}

/// One entry of the binary polyhedral catalog.
#[derive(Debug, Clone)]
pub struct BinaryCatalogEntry {
    pub base: IsoType,
    pub extension: CentralExtension,
}

/// Serialized catalog entry: base tag, the total group, and the center's element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryAssetEntry {
    pub base_tag: IsoType,
    pub total: GroupLiteral,
    pub center: usize,
}

const BINARY_ASSET: &str = include_str!("../../assets/binary_groups.json");

/// Binary tetrahedral, octahedral and icosahedral groups from the bundled asset.
pub fn binary_catalog() -> &'static [BinaryCatalogEntry] {
    static CATALOG: OnceLock<Vec<BinaryCatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let entries: Vec<BinaryAssetEntry> =
            serde_json::from_str(BINARY_ASSET).expect("binary group asset parses");
        entries
            .into_iter()
            .map(|e| {
                let total = e.total.to_group().expect("asset group closes");
                let extension = CentralExtension::new(total, e.center, e.base_tag.clone())
                    .expect("asset entry is a valid extension");
                BinaryCatalogEntry {
                    base: e.base_tag,
                    extension,
                }
            })
            .collect()
    })
}

/// Asset entries rebuilt from the matrix constructions.
pub fn build_binary_asset() -> Vec<BinaryAssetEntry> {
    [
        (IsoType::Alt(4), binary::binary_tetrahedral()),
        (IsoType::Sym(4), binary::binary_octahedral()),
        (IsoType::Alt(5), binary::binary_icosahedral()),
    ]
    .into_iter()
    .map(|(base, total)| {
        let ext = CentralExtension::with_unique_involution(total, base.clone())
            .expect("binary groups have a unique involution");
        BinaryAssetEntry {
            base_tag: base,
            total: ext.total.to_literal(),
            center: ext.center_elt,
        }
    })
    .collect()
}

/// Preimage in `SL(2)` of the standard embedding of `base` into `PGL(2)`.
pub fn binary_extension(base: &IsoType) -> Result<CentralExtension> {
    if let Some(n) = base.dihedral_degree() {
        return CentralExtension::with_unique_involution(catalog::dicyclic(n as usize), base.clone());
    }
    match base {
        IsoType::Alt(4) | IsoType::Sym(4) | IsoType::Alt(5) => binary_catalog()
            .iter()
            .find(|e| e.base == *base)
            .map(|e| e.extension.clone())
            .ok_or_else(|| Error::NotAProjectiveSubgroupTag(base.to_string())),
        IsoType::Cyclic(n) if *n >= 1 => {
            Err(Error::Unsupported("cyclic groups lift without an extension".into()))
        }
        _ => Err(Error::NotAProjectiveSubgroupTag(base.to_string())),
    }
}

/// Whether the standard embedding of `a` into `PGL(2)` lifts to `GL(2)`.
pub fn has_linear_lift(a: &IsoType) -> Result<bool> {
    if let IsoType::Cyclic(_) = a {
        return Ok(true);
    }
    extension_splits(&binary_extension(a)?)
}

/// `Am(P¹ × P¹, A)` for `A` acting diagonally: `Z/2` exactly when the embedding does not lift.
pub fn amitsur_diag_p1p1(a: &IsoType) -> Result<FiniteAbelianGroup> {
    Ok(if has_linear_lift(a)? {
        FiniteAbelianGroup::trivial()
    } else {
        FiniteAbelianGroup::from_orders(&[2])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asset_matches_constructions() {
        let built = build_binary_asset();
        let shipped: Vec<BinaryAssetEntry> = serde_json::from_str(BINARY_ASSET).unwrap();
        assert_eq!(built, shipped);
        assert_eq!(binary_catalog().len(), 3);
    }

    #[test]
    fn quaternion_does_not_split() {
        let q8 = binary_extension(&IsoType::dihedral(2)).unwrap();
        assert_eq!(q8.total.order(), 8);
        assert!(!extension_splits(&q8).unwrap());
        assert!(!has_complement(&q8).unwrap());
    }

    #[test]
    fn products_split() {
        for a in [catalog::alternating(4), catalog::symmetric(4), catalog::dihedral(5)] {
            let ext = CentralExtension::trivial_over(&a).unwrap();
            assert!(extension_splits(&ext).unwrap());
            assert!(has_complement(&ext).unwrap());
        }
    }

    #[test]
    fn lifts() {
        assert!(has_linear_lift(&IsoType::Cyclic(7)).unwrap());
        assert!(has_linear_lift(&IsoType::Dihedral(5)).unwrap());
        assert!(has_linear_lift(&IsoType::Sym(3)).unwrap());
        assert!(!has_linear_lift(&IsoType::Dihedral(4)).unwrap());
        assert!(!has_linear_lift(&IsoType::Alt(4)).unwrap());
        assert!(!has_linear_lift(&IsoType::Sym(4)).unwrap());
        assert!(!has_linear_lift(&IsoType::Alt(5)).unwrap());
        assert!(matches!(
            has_linear_lift(&IsoType::Sym(5)),
            Err(Error::NotAProjectiveSubgroupTag(_))
        ));
        assert_eq!(amitsur_diag_p1p1(&IsoType::Alt(4)).unwrap().divisors(), &[2]);
    }

    #[test]
    fn dicyclic_odd_has_no_literal_complement() {
        let dic3 = binary_extension(&IsoType::Sym(3)).unwrap();
        assert!(extension_splits(&dic3).unwrap());
        assert!(!has_complement(&dic3).unwrap());
    }
}
