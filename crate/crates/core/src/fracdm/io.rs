//! Offline storage of assembled matrices.
//!
//! CSV layout: a two-line header (field names, then values with the α list
//! semicolon-joined), followed by the dense rows with 17-significant-digit
//! scientific notation so values round-trip bit-exactly.
//!
//! Binary layout (little endian): magic `HFDM`, version u8, basis u8
//! (0 over-scaled, 1 normalized, 2 lagrange), dim u8, reserved u8,
//! n_per_dim u32, n_alphas u32, r f64, the α values, then the row-major
//! entries.

use std::io::{Read, Write};
use std::path::Path;

use nalgebra::DMatrix;

use crate::basis::BasisKind;
use crate::error::{Error, Result};
use crate::fracdm::{FracDiffMatrix, SCALING_CONVENTION};

const MAGIC: &[u8; 4] = b"HFDM";

fn basis_tag(basis: BasisKind) -> u8 {
    match basis {
        BasisKind::Overscaled => 0,
        BasisKind::Normalized => 1,
        BasisKind::Lagrange => 2,
    }
}

fn basis_from_tag(tag: u8) -> Result<BasisKind> {
    match tag {
        0 => Ok(BasisKind::Overscaled),
        1 => Ok(BasisKind::Normalized),
        2 => Ok(BasisKind::Lagrange),
        other => Err(Error::Data(format!("unknown basis tag {other}"))),
    }
}

impl FracDiffMatrix {
    pub fn write_csv<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "basis,alphas,r,dim,n,scaling")?;
        let alphas = self
            .alphas
            .iter()
            .map(|a| format!("{a:.17e}"))
            .collect::<Vec<_>>()
            .join(";");
        writeln!(
            out,
            "{},{},{:.17e},{},{},{}",
            self.basis, alphas, self.r, self.dim, self.n_per_dim, SCALING_CONVENTION
        )?;
        let size = self.size();
        for i in 0..size {
            let row = (0..size)
                .map(|j| format!("{:.17e}", self.entries[(i, j)]))
                .collect::<Vec<_>>()
                .join(",");
            writeln!(out, "{row}")?;
        }
        Ok(())
    }

    pub fn read_csv<P: AsRef<Path>>(path: P) -> Result<FracDiffMatrix> {
        let text = std::fs::read_to_string(path)?;
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Data("empty matrix file".into()))?;
        if header != "basis,alphas,r,dim,n,scaling" {
            return Err(Error::Data(format!("unexpected header '{header}'")));
        }
        let meta = lines
            .next()
            .ok_or_else(|| Error::Data("missing metadata line".into()))?;
        let fields: Vec<&str> = meta.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Data("metadata line needs 6 fields".into()));
        }
        let basis = BasisKind::parse(fields[0])?;
        let alphas: Vec<f64> = fields[1]
            .split(';')
            .map(|s| s.parse::<f64>().map_err(|e| Error::Data(e.to_string())))
            .collect::<Result<_>>()?;
        let r: f64 = fields[2].parse().map_err(|e: std::num::ParseFloatError| {
            Error::Data(e.to_string())
        })?;
        let dim: usize = fields[3]
            .parse()
            .map_err(|e: std::num::ParseIntError| Error::Data(e.to_string()))?;
        let n_per_dim: usize = fields[4]
            .parse()
            .map_err(|e: std::num::ParseIntError| Error::Data(e.to_string()))?;
        let size = n_per_dim.pow(dim as u32);
        let mut entries = DMatrix::<f64>::zeros(size, size);
        for (i, line) in lines.enumerate() {
            if i >= size {
                return Err(Error::Data("too many matrix rows".into()));
            }
            for (j, tok) in line.split(',').enumerate() {
                if j >= size {
                    return Err(Error::Data(format!("row {i} has too many columns")));
                }
                entries[(i, j)] = tok
                    .parse()
                    .map_err(|e: std::num::ParseFloatError| Error::Data(e.to_string()))?;
            }
        }
        Ok(FracDiffMatrix {
            basis,
            alphas,
            r,
            dim,
            n_per_dim,
            entries,
        })
    }

    pub fn write_binary<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        out.write_all(MAGIC)?;
        out.write_all(&[1u8, basis_tag(self.basis), self.dim as u8, 0u8])?;
        out.write_all(&(self.n_per_dim as u32).to_le_bytes())?;
        out.write_all(&(self.alphas.len() as u32).to_le_bytes())?;
        out.write_all(&self.r.to_le_bytes())?;
        for a in &self.alphas {
            out.write_all(&a.to_le_bytes())?;
        }
        let size = self.size();
        for i in 0..size {
            for j in 0..size {
                out.write_all(&self.entries[(i, j)].to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_binary<P: AsRef<Path>>(path: P) -> Result<FracDiffMatrix> {
        let mut file = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut head = [0u8; 8];
        file.read_exact(&mut head)?;
        if &head[0..4] != MAGIC {
            return Err(Error::Data("not a matrix dump (bad magic)".into()));
        }
        if head[4] != 1 {
            return Err(Error::Data(format!("unsupported dump version {}", head[4])));
        }
        let basis = basis_from_tag(head[5])?;
        let dim = head[6] as usize;
        let mut u32buf = [0u8; 4];
        file.read_exact(&mut u32buf)?;
        let n_per_dim = u32::from_le_bytes(u32buf) as usize;
        file.read_exact(&mut u32buf)?;
        let n_alphas = u32::from_le_bytes(u32buf) as usize;
        let mut f64buf = [0u8; 8];
        file.read_exact(&mut f64buf)?;
        let r = f64::from_le_bytes(f64buf);
        let mut alphas = Vec::with_capacity(n_alphas);
        for _ in 0..n_alphas {
            file.read_exact(&mut f64buf)?;
            alphas.push(f64::from_le_bytes(f64buf));
        }
        let size = n_per_dim.pow(dim as u32);
        let mut entries = DMatrix::<f64>::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                file.read_exact(&mut f64buf)?;
                entries[(i, j)] = f64::from_le_bytes(f64buf);
            }
        }
        Ok(FracDiffMatrix {
            basis,
            alphas,
            r,
            dim,
            n_per_dim,
            entries,
        })
    }
}
