"""Corpus generation, theorem checks and example search."""
