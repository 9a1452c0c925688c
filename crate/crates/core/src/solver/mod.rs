//! Joint factorization of the user-word matrix `S ~ U P^T` and the ego
//! network `N ~ U V U^T` with Frobenius regularization, solved by
//! square-root multiplicative updates.

mod factors;
mod fit;
mod objective;
mod params;
mod update;

pub use factors::FactorSet;
pub use fit::{fit, FitTrace, StopReason};
pub use objective::{gradients, objective, objective_parts, Gradients, ObjectiveParts};
pub use params::HyperParams;
pub use update::update_step;

use crate::data::{EgoNetwork, UserWordMatrix};
use crate::error::{ensure, Result};

/// Checks that `S`, `N`, and the factors describe the same instance.
pub(crate) fn check_dims(s: &UserWordMatrix, n: &EgoNetwork, f: &FactorSet) -> Result<()> {
    let users = n.size();
    let k = f.k();
    ensure!(
        s.num_users() == users,
        Contract,
        "user-word matrix has {} rows but the network has {users} users",
        s.num_users()
    );
    f.u.check_shape(users, k, "U")?;
    f.v.check_shape(k, k, "V")?;
    f.p.check_shape(s.num_words(), k, "P")?;
    Ok(())
}
