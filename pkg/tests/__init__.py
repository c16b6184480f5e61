# FreeKnots Tests Package
