"""Test package for diproperm."""
