use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod output;
mod svg;
mod table;

use commands::{
    DeltaSArgs, EntropyMapArgs, IsentropeArgs, PhaseDiagramArgs, RcArgs, SpectrumArgs, ThermoArgs,
    ValidateArgs,
};

/// Exact thermodynamics of the mixed spin-(1/2, 1) dimer in crossed
/// magnetic and electric fields. Energies, fields and temperatures are in
/// units of J (k_B = mu_B = 1).
#[derive(Parser)]
#[command(name = "dimer", version)]
struct Cli {
    /// JSON file with default values for the subcommand's flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Six eigenvalues and entangled-state amplitudes.
    Spectrum(SpectrumArgs),
    /// Ground-state phase map in the (e, b) plane with transition lines.
    PhaseDiagram(PhaseDiagramArgs),
    /// Magnetization, polarization and entropy along one axis.
    Thermo(ThermoArgs),
    /// Entropy density map in the (field, T) plane.
    EntropyMap(EntropyMapArgs),
    /// Isothermal entropy change map in the (field span, T) plane.
    DeltaS(DeltaSArgs),
    /// Constant-entropy lines T(field).
    Isentrope(IsentropeArgs),
    /// Refrigerant capacity as a function of the field span.
    Rc(RcArgs),
    /// Cross-check closed forms against the numerical oracle.
    Validate(ValidateArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config.as_deref();
    let result = match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a, cfg),
        Command::PhaseDiagram(a) => commands::phase_diagram(a, cfg),
        Command::Thermo(a) => commands::thermo(a, cfg),
        Command::EntropyMap(a) => commands::entropy_map(a, cfg),
        Command::DeltaS(a) => commands::delta_s(a, cfg),
        Command::Isentrope(a) => commands::isentrope(a, cfg),
        Command::Rc(a) => commands::rc(a, cfg),
        Command::Validate(a) => commands::validate(a, cfg),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
