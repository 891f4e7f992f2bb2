"""Exact Chevalley-group models, parabolic combinatorics and presentation builders."""
