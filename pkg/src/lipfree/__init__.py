"""Lipschitz-free spaces over finite pointed metric spaces."""
