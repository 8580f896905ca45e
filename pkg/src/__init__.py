"""Perfect quadratization of degree-4 pseudo-Boolean functions."""
