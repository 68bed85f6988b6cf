"""Constructive *-Euclidean division, SL_* groups and adelic assembly."""
