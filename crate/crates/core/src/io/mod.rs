//! File formats: failure-mode registers, FIS configuration, rendered
//! reports, and response-surface grids. All formats are UTF-8 text with
//! LF line endings.

pub mod fis_text;
pub mod register;
pub mod report;
pub mod surface;

pub use fis_text::{load_fis, parse_fis, save_fis, write_fis};
pub use register::{load_register, parse_register};
pub use report::{parse_csv_report, render_report, ParsedReport, ReportFormat, ReportRow};
pub use surface::{export_surface, Axis, SurfaceGrid};
