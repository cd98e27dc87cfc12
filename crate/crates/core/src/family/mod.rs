//! The family `R_{m,n}`, its specialization `S`, and one verifier per claim.

pub mod constructors;
pub mod instance;
pub mod replay;
pub mod report;
pub mod verify;

pub use constructors::{hypersurface_H, matrix_ideal, quotient_S_ideal};
pub use instance::{Characteristic, PaperInstance};
pub use replay::replay_key_lemma_proof;
pub use report::{claim_info, ClaimInfo, Verdict, VerificationReport, Witness, CLAIMS};
pub use verify::{
    prime_sweep, verify_hsop, verify_hsop_and_nzd, verify_key_lemma, verify_main_theorem, verify_not_fpure,
    verify_not_fregular, verify_nzd, verify_quotient_fregular, verify_singular_locus, veronese_presentation_check,
    VerifyOptions, DEFAULT_Q_WINDOW,
};
