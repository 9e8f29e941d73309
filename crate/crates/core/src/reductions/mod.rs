//! Hardness gadgets: one-in-three instances, the systems built from them
//! and the check that solvability tracks satisfiability.

mod gadgets;
mod instance;
mod verify;

pub use gadgets::{build_gadget, Family, GadgetError, GadgetOutput};
pub use instance::{
    brute_force_model, example_instance, for_each_instance, validate_instance, InstanceError, OneInThreeInstance,
    ORACLE_LIMIT,
};
pub use verify::{model_to_region, region_to_model, verify_gadget, verify_output, ModelError, Verification, VerifyError};
