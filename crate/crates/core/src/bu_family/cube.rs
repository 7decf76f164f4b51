//! Cube-surface grids on `S^2`.

use std::collections::HashMap;

type Cells = (Vec<Vec<f64>>, Vec<usize>, Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Directions, antipode, cells (vertices, edges, squares) and their faces
/// for the `res`-subdivided surface of `[-1, 1]^3`.
pub(crate) fn cube_cells(res: usize) -> Cells {
    let on_surface = |p: [usize; 3]| p.iter().any(|&c| c == 0 || c == res);
    let mut index: HashMap<[usize; 3], usize> = HashMap::new();
    let mut points = Vec::new();
    for a in 0..=res {
        for b in 0..=res {
            for c in 0..=res {
                let p = [a, b, c];
                if on_surface(p) {
                    index.insert(p, points.len());
                    points.push(p);
                }
            }
        }
    }
    let dirs = points
        .iter()
        .map(|p| {
            let v: Vec<f64> = p.iter().map(|&c| 2.0 * c as f64 / res as f64 - 1.0).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / n).collect()
        })
        .collect();
    let antipode = points.iter().map(|p| index[&[res - p[0], res - p[1], res - p[2]]]).collect();

    let mut squares: Vec<[usize; 4]> = Vec::new();
    for axis in 0..3 {
        let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
        for side in [0, res] {
            for i in 0..res {
                for j in 0..res {
                    let corner = |di: usize, dj: usize| {
                        let mut p = [0; 3];
                        p[axis] = side;
                        p[u] = i + di;
                        p[v] = j + dj;
                        index[&p]
                    };
                    squares.push([corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)]);
                }
            }
        }
    }
    let mut cells: Vec<Vec<usize>> = (0..points.len()).map(|i| vec![i]).collect();
    let mut faces: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    let mut edge_id: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut square_sides = Vec::new();
    for sq in &squares {
        let mut sides = Vec::new();
        for k in 0..4 {
            let mut e = vec![sq[k], sq[(k + 1) % 4]];
            e.sort_unstable();
            let id = *edge_id.entry(e.clone()).or_insert_with(|| {
                cells.push(e.clone());
                faces.push(e.clone());
                cells.len() - 1
            });
            sides.push(id);
        }
        square_sides.push(sides);
    }
    for (sq, sides) in squares.iter().zip(square_sides) {
        let mut c = sq.to_vec();
        c.sort_unstable();
        cells.push(c);
        faces.push(sides);
    }
    (dirs, antipode, cells, faces)
}

#[cfg(test)]
mod tests {
    use crate::bu_family::SphereGrid;
    use crate::z2_chain::betti_numbers;

    #[test]
    fn projective_plane_from_the_cube() {
        let m = SphereGrid::Cube { res: 2 }.model().unwrap();
        assert_eq!(m.n_cells(), 12);
        assert_eq!(betti_numbers(&m.quotient), vec![1, 1, 1]);
        assert_eq!(betti_numbers(&m.sphere), vec![1, 0, 1]);
        for (i, &j) in m.antipode.iter().enumerate() {
            assert!(m.dirs[i].iter().zip(&m.dirs[j]).all(|(a, b)| (a + b).abs() < 1e-12));
        }
    }
}
