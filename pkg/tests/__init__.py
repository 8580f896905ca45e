"""Tests for quadkit."""
