"""Unsupervised extractive summarization with heterogeneous graph embeddings."""

__version__ = "0.1.0"
