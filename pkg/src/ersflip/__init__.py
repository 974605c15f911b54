"""Simple drawings on the sphere: extended rotation systems and triangle flips."""
