//! Bottom topography descriptors and their sampling on grids.

use crate::error::{Error, Result};
use crate::grid::{Grid1D, Grid2D, GHOSTS_1D, GHOSTS_2D};
use crate::reconstruct::minmod3;

#[derive(Debug, Clone, PartialEq, Default)]
pub enum TopographyDescriptor {
    #[default]
    Flat,
    /// `amplitude * exp(-(d / width)^2)`, with `d = |y - center.1|` in 1-D and the
    /// distance to `center` in 2-D.
    Gaussian { amplitude: f64, center: (f64, f64), width: f64 },
    /// 2-D ridge depending on `y` only: `amplitude * exp(-((y - center) / width)^2)`.
    GaussianY { amplitude: f64, center: f64, width: f64 },
    /// Cell-center values; interface values come from a minmod reconstruction.
    Tabulated(Vec<f64>),
}

impl TopographyDescriptor {
    /// Parses `flat`, `gaussian(a,c,w)`, `gaussian(a,cx,cy,w)`, `gaussian_y(a,c,w)` or
    /// `tabulated(z1,z2,...)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownDescriptor(s.to_string());
        if s.eq_ignore_ascii_case("flat") {
            return Ok(Self::Flat);
        }
        let open = s.find('(').ok_or_else(unknown)?;
        if !s.ends_with(')') {
            return Err(unknown());
        }
        let name = s[..open].trim().to_ascii_lowercase();
        let args = s[open + 1..s.len() - 1]
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| unknown())?;
        let d = match (name.as_str(), args.as_slice()) {
            ("gaussian", &[a, c, w]) => Self::Gaussian { amplitude: a, center: (c, c), width: w },
            ("gaussian", &[a, cx, cy, w]) => Self::Gaussian { amplitude: a, center: (cx, cy), width: w },
            ("gaussian_y", &[a, c, w]) => Self::GaussianY { amplitude: a, center: c, width: w },
            ("tabulated", v) if !v.is_empty() => Self::Tabulated(v.to_vec()),
            _ => return Err(unknown()),
        };
        match &d {
            Self::Gaussian { width, .. } | Self::GaussianY { width, .. } if *width <= 0.0 => Err(unknown()),
            _ => Ok(d),
        }
    }

    /// Point value on a 1-D `y` axis, `None` for tabulated data.
    pub fn eval_1d(&self, y: f64) -> Option<f64> {
        match self {
            Self::Flat => Some(0.0),
            Self::Gaussian { amplitude, center, width } => Some(gauss(*amplitude, (y - center.1) / width)),
            Self::GaussianY { amplitude, center, width } => Some(gauss(*amplitude, (y - center) / width)),
            Self::Tabulated(_) => None,
        }
    }

    /// Point value in the plane, `None` for tabulated data.
    pub fn eval_2d(&self, x: f64, y: f64) -> Option<f64> {
        match self {
            Self::Flat => Some(0.0),
            Self::Gaussian { amplitude, center, width } => {
                let (dx, dy) = (x - center.0, y - center.1);
                Some(amplitude * (-(dx * dx + dy * dy) / (width * width)).exp())
            }
            Self::GaussianY { amplitude, center, width } => Some(gauss(*amplitude, (y - center) / width)),
            Self::Tabulated(_) => None,
        }
    }
}

fn gauss(a: f64, s: f64) -> f64 {
    a * (-s * s).exp()
}

/// Topography sampled on a 1-D grid including ghost cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Topography1D {
    pub descriptor: TopographyDescriptor,
    /// Cell centers with `GHOSTS_1D` ghost cells on each side.
    pub padded: Vec<f64>,
    /// `Z` at interface `i` seen from the left cell (`Z⁻`) and right cell (`Z⁺`).
    pub face_minus: Vec<f64>,
    pub face_plus: Vec<f64>,
}

impl Topography1D {
    pub fn new(descriptor: &TopographyDescriptor, grid: &Grid1D) -> Result<Self> {
        let n = grid.n();
        let g = GHOSTS_1D;
        let ax = grid.y;
        match descriptor {
            TopographyDescriptor::Tabulated(values) => {
                if values.len() != n {
                    return Err(Error::ShapeMismatch { left: values.len(), right: n });
                }
                let padded: Vec<f64> = (0..n + 2 * g).map(|c| values[c.saturating_sub(g).min(n - 1)]).collect();
                let (face_minus, face_plus) = minmod_faces(&padded, g, n);
                Ok(Self { descriptor: descriptor.clone(), padded, face_minus, face_plus })
            }
            d => {
                let eval = |y| d.eval_1d(y).expect("analytic descriptor");
                let padded = (0..n + 2 * g).map(|c| eval(ax.center(c as isize - g as isize))).collect();
                let faces: Vec<f64> = (0..=n).map(|i| eval(ax.interface(i))).collect();
                Ok(Self { descriptor: d.clone(), padded, face_minus: faces.clone(), face_plus: faces })
            }
        }
    }

    /// `Z` at interior cell `k`.
    pub fn center(&self, k: usize) -> f64 {
        self.padded[k + GHOSTS_1D]
    }

    pub fn centers(&self) -> &[f64] {
        let n = self.face_minus.len() - 1;
        &self.padded[GHOSTS_1D..GHOSTS_1D + n]
    }
}

/// Shorthand for [`Topography1D::new`].
pub fn topography_profile(descriptor: &TopographyDescriptor, grid: &Grid1D) -> Result<Topography1D> {
    Topography1D::new(descriptor, grid)
}

/// Topography sampled on a 2-D grid including a ghost frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Topography2D {
    pub descriptor: TopographyDescriptor,
    /// `(nx + 2G) x (ny + 2G)` centers, row-major in `x`.
    pub padded: Vec<f64>,
    pub padded_nx: usize,
    /// x-interfaces, index `k * (nx + 1) + i`.
    pub xface_minus: Vec<f64>,
    pub xface_plus: Vec<f64>,
    /// y-interfaces, index `i * nx + j`.
    pub yface_minus: Vec<f64>,
    pub yface_plus: Vec<f64>,
}

impl Topography2D {
    pub fn new(descriptor: &TopographyDescriptor, grid: &Grid2D) -> Result<Self> {
        let (nx, ny) = (grid.nx(), grid.ny());
        let g = GHOSTS_2D;
        let (px, py) = (nx + 2 * g, ny + 2 * g);
        let mut padded = vec![0.0; px * py];
        let mut xm = vec![0.0; (nx + 1) * ny];
        let mut ym = vec![0.0; nx * (ny + 1)];
        let (xp, yp);
        match descriptor {
            TopographyDescriptor::Tabulated(values) => {
                if values.len() != nx * ny {
                    return Err(Error::ShapeMismatch { left: values.len(), right: nx * ny });
                }
                for kp in 0..py {
                    for jp in 0..px {
                        let j = jp.saturating_sub(g).min(nx - 1);
                        let k = kp.saturating_sub(g).min(ny - 1);
                        padded[kp * px + jp] = values[k * nx + j];
                    }
                }
                let mut xpv = vec![0.0; (nx + 1) * ny];
                for k in 0..ny {
                    let row: Vec<f64> = (0..px).map(|jp| padded[(k + g) * px + jp]).collect();
                    let (m, p) = minmod_faces(&row, g, nx);
                    xm[k * (nx + 1)..(k + 1) * (nx + 1)].copy_from_slice(&m);
                    xpv[k * (nx + 1)..(k + 1) * (nx + 1)].copy_from_slice(&p);
                }
                let mut ypv = vec![0.0; nx * (ny + 1)];
                for j in 0..nx {
                    let col: Vec<f64> = (0..py).map(|kp| padded[kp * px + j + g]).collect();
                    let (m, p) = minmod_faces(&col, g, ny);
                    for i in 0..=ny {
                        ym[i * nx + j] = m[i];
                        ypv[i * nx + j] = p[i];
                    }
                }
                xp = xpv;
                yp = ypv;
            }
            d => {
                let eval = |x, y| d.eval_2d(x, y).expect("analytic descriptor");
                for kp in 0..py {
                    for jp in 0..px {
                        let x = grid.x.center(jp as isize - g as isize);
                        let y = grid.y.center(kp as isize - g as isize);
                        padded[kp * px + jp] = eval(x, y);
                    }
                }
                for k in 0..ny {
                    for i in 0..=nx {
                        xm[k * (nx + 1) + i] = eval(grid.x.interface(i), grid.y.center(k as isize));
                    }
                }
                for i in 0..=ny {
                    for j in 0..nx {
                        ym[i * nx + j] = eval(grid.x.center(j as isize), grid.y.interface(i));
                    }
                }
                xp = xm.clone();
                yp = ym.clone();
            }
        }
        Ok(Self {
            descriptor: descriptor.clone(),
            padded,
            padded_nx: px,
            xface_minus: xm,
            xface_plus: xp,
            yface_minus: ym,
            yface_plus: yp,
        })
    }

    /// `Z` at interior cell `(j, k)`.
    pub fn center(&self, j: usize, k: usize) -> f64 {
        self.padded[(k + GHOSTS_2D) * self.padded_nx + j + GHOSTS_2D]
    }
}

/// Plain minmod (Θ = 1) face values for the `n` interior cells of a padded array.
fn minmod_faces(padded: &[f64], g: usize, n: usize) -> (Vec<f64>, Vec<f64>) {
    let half_slope = |c: usize| {
        if c == 0 || c + 1 >= padded.len() {
            0.0
        } else {
            0.5 * minmod3(padded[c] - padded[c - 1], 0.5 * (padded[c + 1] - padded[c - 1]), padded[c + 1] - padded[c])
        }
    };
    let minus = (0..=n).map(|i| padded[g - 1 + i] + half_slope(g - 1 + i)).collect();
    let plus = (0..=n).map(|i| padded[g + i] - half_slope(g + i)).collect();
    (minus, plus)
}
