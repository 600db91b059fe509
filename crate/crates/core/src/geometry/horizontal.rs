//! Horizontal cylinders and saddle connections read directly off `(h, v)`.

use crate::origami::Origami;

/// Squares whose bottom-left corner is a zero, or every square when the
/// vertices are treated as marked points.
pub(crate) fn singular_corners(o: &Origami, marked: bool) -> Vec<bool> {
    let (class, sizes) = o.vertex_classes();
    class.iter().map(|&c| marked || sizes[c as usize] > 1).collect()
}

/// `(width, height)` of each horizontal cylinder.
///
/// Rows are `h`-cycles. Row `C` continues into the row above when
/// `v∘h = h∘v` on `C` and no vertex on the line between them is marked; each
/// maximal chain of rows is one cylinder. A closed chain (a torus with no
/// marked points) has height equal to its number of rows.
pub(crate) fn cylinder_shapes(o: &Origami, marked: bool) -> Vec<(u32, u32)> {
    let (h, v) = (o.h(), o.v());
    let cycles = h.cycles();
    let mut cycle_of = vec![0usize; o.n()];
    for (k, c) in cycles.iter().enumerate() {
        for &x in c {
            cycle_of[x as usize] = k;
        }
    }
    let next: Vec<Option<usize>> = cycles
        .iter()
        .map(|c| {
            let glued = !marked && c.iter().all(|&i| v.apply(h.apply(i)) == h.apply(v.apply(i)));
            glued.then(|| cycle_of[v.apply(c[0]) as usize])
        })
        .collect();
    let mut has_prev = vec![false; cycles.len()];
    for &nx in next.iter().flatten() {
        has_prev[nx] = true;
    }

    let mut visited = vec![false; cycles.len()];
    let mut out = Vec::new();
    for start in 0..cycles.len() {
        if has_prev[start] {
            continue;
        }
        let mut height = 0;
        let mut cur = Some(start);
        while let Some(k) = cur {
            visited[k] = true;
            height += 1;
            cur = next[k];
        }
        out.push((cycles[start].len() as u32, height));
    }
    // closed chains
    for start in 0..cycles.len() {
        if visited[start] {
            continue;
        }
        let mut height = 0;
        let mut k = start;
        while !visited[k] {
            visited[k] = true;
            height += 1;
            k = next[k].expect("every row in a closed chain continues upward");
        }
        out.push((cycles[start].len() as u32, height));
    }
    out
}

/// Lengths of horizontal saddle connections: along each row of bottom edges,
/// the gaps between consecutive singular corners.
pub(crate) fn saddle_lengths(o: &Origami, marked: bool) -> Vec<u32> {
    let singular = singular_corners(o, marked);
    let mut out = Vec::new();
    for cycle in o.h().cycles() {
        let marks: Vec<usize> = cycle
            .iter()
            .enumerate()
            .filter(|(_, &sq)| singular[sq as usize])
            .map(|(pos, _)| pos)
            .collect();
        for (k, &pos) in marks.iter().enumerate() {
            let next = marks.get(k + 1).copied().unwrap_or(marks[0] + cycle.len());
            out.push((next - pos) as u32);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn origami(s: &str) -> Origami {
        s.parse().unwrap()
    }

    #[test]
    fn torus_cylinders() {
        assert_eq!(cylinder_shapes(&Origami::torus(), false), vec![(1, 1)]);
        assert_eq!(cylinder_shapes(&Origami::torus(), true), vec![(1, 1)]);
    }

    #[test]
    fn l_shape_cylinders() {
        let mut c = cylinder_shapes(&Origami::l_shape(), false);
        c.sort();
        assert_eq!(c, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn single_commuting_cycle() {
        let o = origami("3; h=(0 1 2); v=(0 1 2)");
        assert_eq!(cylinder_shapes(&o, false), vec![(3, 1)]);
    }

    #[test]
    fn stacked_rows_form_tall_cylinder() {
        // 2x2 block on a torus: one closed chain of two rows of width 2
        let o = Origami::new(
            Permutation::parse_cycles(4, "(0 1)(2 3)").unwrap(),
            Permutation::parse_cycles(4, "(0 2)(1 3)").unwrap(),
        )
        .unwrap();
        assert_eq!(cylinder_shapes(&o, false), vec![(2, 2)]);
        // with marked vertices each row is its own cylinder
        assert_eq!(cylinder_shapes(&o, true), vec![(2, 1), (2, 1)]);
    }

    #[test]
    fn l_shape_saddles() {
        let mut s = saddle_lengths(&Origami::l_shape(), false);
        s.sort();
        assert_eq!(s, vec![1, 1, 1]);
        assert_eq!(saddle_lengths(&Origami::torus(), true), vec![1]);
        assert!(saddle_lengths(&Origami::torus(), false).is_empty());
    }
}
