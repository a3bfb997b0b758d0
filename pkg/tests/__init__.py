"""Tests for spinorlab."""
