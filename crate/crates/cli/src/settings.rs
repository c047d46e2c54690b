//! Size limits from flags, the `QM_LIMITS` variable and defaults, in that
//! order of precedence.

use clap::Args;
use qm_core::Limits;

use crate::output::Failure;

#[derive(Args, Clone, Debug, Default, PartialEq, Eq)]
pub struct LimitFlags {
    /// Largest n for a full subset scan [default: 22]
    #[arg(long, global = true)]
    pub exact_subset_limit: Option<usize>,
    /// Largest n for a full order scan [default: 9]
    #[arg(long, global = true)]
    pub exact_order_limit: Option<usize>,
    /// Largest part count for exact cut-norm enumeration [default: 20]
    #[arg(long, global = true)]
    pub cutnorm_limit: Option<usize>,
}

/// Parses `QM_LIMITS`, e.g. `--exact-subset-limit 18 --cutnorm-limit=16`.
pub fn parse_env(s: &str) -> Result<LimitFlags, Failure> {
    let bad = |m: String| Failure::usage(format!("QM_LIMITS: {m}"));
    let mut flags = LimitFlags::default();
    let mut tokens = s.split_whitespace();
    while let Some(tok) = tokens.next() {
        let (name, value) = match tok.split_once('=') {
            Some((n, v)) => (n, v.to_string()),
            None => (tok, tokens.next().ok_or_else(|| bad(format!("{tok} needs a value")))?.to_string()),
        };
        let v: usize = value.parse().map_err(|_| bad(format!("bad value `{value}` for {name}")))?;
        let slot = match name {
            "--exact-subset-limit" => &mut flags.exact_subset_limit,
            "--exact-order-limit" => &mut flags.exact_order_limit,
            "--cutnorm-limit" => &mut flags.cutnorm_limit,
            _ => return Err(bad(format!("unknown setting `{name}`"))),
        };
        *slot = Some(v);
    }
    Ok(flags)
}

pub fn resolve(flags: &LimitFlags, env: Option<&str>) -> Result<Limits, Failure> {
    let env = env.map(parse_env).transpose()?.unwrap_or_default();
    let d = Limits::default();
    Ok(Limits {
        exact_subset: flags.exact_subset_limit.or(env.exact_subset_limit).unwrap_or(d.exact_subset),
        exact_order: flags.exact_order_limit.or(env.exact_order_limit).unwrap_or(d.exact_order),
        cutnorm: flags.cutnorm_limit.or(env.cutnorm_limit).unwrap_or(d.cutnorm),
    })
}
