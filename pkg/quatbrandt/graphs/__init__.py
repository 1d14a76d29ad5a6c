"""Big, little and enhanced isogeny graphs built from class sets."""
