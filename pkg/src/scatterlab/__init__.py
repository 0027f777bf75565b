"""Far-field synthesis and qualitative reconstruction for 2D acoustic scattering."""
