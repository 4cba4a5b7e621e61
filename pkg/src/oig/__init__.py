"""One-inclusion graphs and their g-relevant densities."""
