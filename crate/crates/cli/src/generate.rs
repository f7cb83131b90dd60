use crate::CliError;
use route_skyline::graph::{generate_graph, write_graph, GeneratorConfig};
use std::io::Write;

/// Generates a graph and writes it in the edge-list format.
pub fn cmd_generate(config: &GeneratorConfig, out: impl Write) -> Result<(), CliError> {
    let g = generate_graph(config).map_err(|e| CliError::Usage(e.to_string()))?;
    write_graph(&g, out)?;
    Ok(())
}
