# FreeKnots Library Package
