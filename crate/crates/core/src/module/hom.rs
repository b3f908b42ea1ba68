use super::Module;
use crate::linalg::Matrix;

/// `true` if `g: M → N` commutes with the action of every basis element.
pub fn is_module_map(m: &Module, n: &Module, g: &Matrix) -> bool {
    if g.rows() != n.dim() || g.cols() != m.dim() {
        return false;
    }
    (0..m.algebra().dim()).all(|b| g.mul(m.act(b)) == n.act(b).mul(g))
}

/// Basis of `Hom_A(M, N)`, each map as an `N.dim() x M.dim()` matrix.
///
/// Unknowns are the vertex blocks `g_v: M_v → N_v`; the equations are
/// `g_u R^M_b = R^N_b g_v` for each generator `b ∈ e_v A e_u`.
pub fn hom_basis(m: &Module, n: &Module) -> Vec<Matrix> {
    let alg = m.algebra();
    let f = alg.field();
    let nv = alg.n_vertices();
    let mut var_off = vec![0usize; nv + 1];
    for v in 0..nv {
        var_off[v + 1] = var_off[v] + n.dims()[v] * m.dims()[v];
    }
    let nvars = var_off[nv];
    if nvars == 0 {
        return Vec::new();
    }
    // variable for entry (i, j) of g_v
    let var = |v: usize, i: usize, j: usize| var_off[v] + i * m.dims()[v] + j;
    let mut rows: Vec<Vec<(usize, crate::field::Scalar)>> = Vec::new();
    for &b in alg.generators() {
        let (v, u) = (alg.left(b), alg.right(b));
        let (mu, mv, nu, nvd) = (m.dims()[u], m.dims()[v], n.dims()[u], n.dims()[v]);
        if mv == 0 || nu == 0 {
            continue;
        }
        let a = m.act(b); // block M_v → M_u sits at rows of u, cols of v
        let bn = n.act(b);
        let (mo_u, mo_v, no_u, no_v) = (m.offset(u), m.offset(v), n.offset(u), n.offset(v));
        for i in 0..nu {
            for j in 0..mv {
                let mut row = Vec::new();
                // (g_u A)[i][j] = Σ_k g_u[i][k] A[k][j]
                for k in 0..mu {
                    let c = a.get(mo_u + k, mo_v + j);
                    if !c.is_zero() {
                        row.push((var(u, i, k), c.clone()));
                    }
                }
                // - (B g_v)[i][j] = - Σ_k B[i][k] g_v[k][j]
                for k in 0..nvd {
                    let c = bn.get(no_u + i, no_v + k);
                    if !c.is_zero() {
                        row.push((var(v, k, j), -c));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let mut sys = Matrix::zeros(f, rows.len(), nvars);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row {
            sys.add_at(r, *c, x);
        }
    }
    let ker = if rows.is_empty() {
        (0..nvars).map(|i| crate::linalg::unit_vector(f, nvars, i)).collect()
    } else {
        sys.kernel()
    };
    ker.into_iter()
        .map(|k| {
            let mut g = Matrix::zeros(f, n.dim(), m.dim());
            for v in 0..nv {
                for i in 0..n.dims()[v] {
                    for j in 0..m.dims()[v] {
                        let x = &k[var(v, i, j)];
                        if !x.is_zero() {
                            g.set(n.offset(v) + i, m.offset(v) + j, x.clone());
                        }
                    }
                }
            }
            g
        })
        .collect()
}
