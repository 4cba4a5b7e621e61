"""Multi-group bipartite matching: networks, the augmenting solver, duality and oracles."""
