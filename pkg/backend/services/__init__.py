"""Service-layer modules shared by the CLI and HTTP API."""
