use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hetcat", version, about = "Exhaustive checks of finite posets, categories, het bimodules and adjunctions")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Add elapsed wall time to the report statistics.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Cap on the number of objects or elements of any structure.
    #[arg(long, global = true, env = "HETCAT_CAP_OBJECTS")]
    pub cap_objects: Option<usize>,
    /// Cap on word depth for free-group checks.
    #[arg(long, global = true, env = "HETCAT_CAP_DEPTH")]
    pub cap_depth: Option<usize>,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, env = "HETCAT_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a structure or verify a scenario.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Run one of the worked models.
    #[command(subcommand)]
    Demo(DemoCommand),
    /// Draw a verified adjunction or brain scenario.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    To,
    From,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixArg {
    Src,
    Tgt,
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    Poset {
        file: PathBuf,
    },
    Category {
        file: PathBuf,
        /// Look for an isomorphism between two objects.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        iso: Option<Vec<String>>,
        /// Look for a product of two objects.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        product: Option<Vec<String>>,
        /// Objects with the property to find universals for; `*` for all.
        #[arg(long, num_args = 1..)]
        universal: Option<Vec<String>>,
        /// Direction of the participation arrows for `--universal`.
        #[arg(long, value_enum, default_value_t = DirectionArg::To)]
        direction: DirectionArg,
    },
    Functor {
        file: PathBuf,
    },
    Bimodule {
        file: PathBuf,
        /// Search for representing objects at this object.
        #[arg(long)]
        represent: Option<String>,
        /// Which end of the hets `--represent` names.
        #[arg(long, value_enum, default_value_t = FixArg::Src)]
        side: FixArg,
    },
    Galois {
        #[arg(long)]
        lower: PathBuf,
        #[arg(long)]
        upper: PathBuf,
    },
    SemiAdjunction {
        file: PathBuf,
    },
    Adjunction {
        file: PathBuf,
    },
    Brain {
        file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum DemoCommand {
    /// The adjoint triple of image, inverse image and universal image.
    Quantifiers {
        #[arg(long)]
        map: PathBuf,
    },
    /// The inverse image as a brain functor.
    BrainPowerset {
        #[arg(long)]
        map: PathBuf,
    },
    /// Adding the union of a family to the family leaves the union fixed.
    ThirdMan {
        #[arg(long, value_delimiter = ',')]
        universe: Vec<String>,
        /// A member of the family, e.g. `{1,2}`; repeat for more.
        #[arg(long)]
        family: Vec<String>,
    },
    /// Free group on the generators mapping into a finite group.
    FreeGroup {
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// A word such as `x y^-1 x` to reduce; repeat for more.
        #[arg(long)]
        word: Vec<String>,
        /// Generator images such as `x=r,y=s` used to evaluate `--word`.
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
    },
    /// The biproduct brain over GF(p).
    BrainVector {
        #[arg(long)]
        prime: u32,
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
    },
    /// The meet of two subsets found as a universal.
    MeetUniversal {
        #[arg(long, value_delimiter = ',')]
        universe: Vec<String>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Emit Graphviz DOT (the only style).
    #[arg(long, required = true)]
    pub dot: bool,
    pub file: PathBuf,
    /// Write the diagram here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
