//! Building blocks of the `selfnav` command-line tool: gate specifications
//! and the JSON schedule format.

pub mod gate;
pub mod number;
pub mod schedule;

pub use gate::{GateSpec, GateSpecError, NAMED_GATES};
pub use number::Num;
pub use schedule::{PulseRecord, ScheduleFile};
