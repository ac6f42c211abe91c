//! Left-to-right boundary-matrix reduction over Z/2.

/// Symmetric difference of two ascending index lists.
pub(crate) fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Reduces a Z/2 boundary matrix column by column, left to right.
///
/// `columns[j]` lists the non-zero rows of column `j`, ascending, in a
/// global order where every non-zero row index is smaller than its column
/// index. `None` marks columns excluded from the computation (e.g.
/// dimensions above the requested range); they are neither reduced nor
/// eligible as pivots.
///
/// Returns, per column, the row it kills after reduction (`Some` for
/// negative columns) or `None` (positive or excluded columns). This is the
/// textbook lowest-one pairing: a column repeatedly adds earlier negative
/// columns sharing its lowest non-zero row until that row is unclaimed or
/// the column vanishes.
pub(crate) fn reduce_columns(columns: Vec<Option<Vec<u32>>>) -> Vec<Option<u32>> {
    let n = columns.len();
    let mut pivot_owner: Vec<u32> = vec![u32::MAX; n];
    let mut reduced: Vec<Option<Vec<u32>>> = vec![None; n];
    let mut kills: Vec<Option<u32>> = vec![None; n];
    for (j, col) in columns.into_iter().enumerate() {
        let Some(mut col) = col else { continue };
        while let Some(&low) = col.last() {
            let owner = pivot_owner[low as usize];
            if owner == u32::MAX {
                break;
            }
            col = xor_sorted(&col, reduced[owner as usize].as_ref().unwrap());
        }
        if let Some(&low) = col.last() {
            pivot_owner[low as usize] = j as u32;
            kills[j] = Some(low);
            reduced[j] = Some(col);
        }
    }
    kills
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_is_symmetric_difference() {
        assert_eq!(xor_sorted(&[1, 3, 5], &[3, 4]), vec![1, 4, 5]);
        assert_eq!(xor_sorted(&[], &[2]), vec![2]);
        assert_eq!(xor_sorted(&[2], &[2]), Vec::<u32>::new());
    }

    #[test]
    fn reduces_a_filled_triangle_boundary() {
        // Order: v0 v1 v2, e01 e02 e12, t012 — the standard full triangle.
        let columns = vec![
            Some(vec![]),        // v0
            Some(vec![]),        // v1
            Some(vec![]),        // v2
            Some(vec![0, 1]),    // e01 kills v1
            Some(vec![0, 2]),    // e02 kills v2
            Some(vec![1, 2]),    // e12 -> cycle (positive)
            Some(vec![3, 4, 5]), // t012 kills e12
        ];
        let kills = reduce_columns(columns);
        assert_eq!(kills[3], Some(1));
        assert_eq!(kills[4], Some(2));
        assert_eq!(kills[5], None);
        assert_eq!(kills[6], Some(5));
    }

    #[test]
    fn excluded_columns_are_ignored() {
        let columns = vec![Some(vec![]), Some(vec![]), Some(vec![0, 1]), None];
        let kills = reduce_columns(columns);
        assert_eq!(kills[2], Some(1));
        assert_eq!(kills[3], None);
    }
}
