"""Run plumbing shared by the command modules: config parsing, outcomes, plot data."""
