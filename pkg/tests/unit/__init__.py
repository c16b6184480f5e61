# FreeKnots Unit Tests Package
