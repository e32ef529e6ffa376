"""Exact verification of Hopf algebra, braiding and Yetter-Drinfeld brace identities."""
