"""Source text of the worked ideals used throughout the tests."""
PRINCIPAL_LINEAR = "vars: x; x"
PRINCIPAL_SQUARE = "vars: x; x^2"
CHAIN = "vars: x,y,z; x^2*y, y^2*z, z^2"
BAND = "vars: x,y,z,w,u; x^2*y*z, y^2*z*w, z^2*w*u, w^2*u, u^2"
SPLIT = "vars: x1,x2,x3,x4,x5; x1^2, x1*x2, x1*x4, x3^2, x5^2"
POLAR = "vars: x1,x2,x3; x1^3, x2^2*x3, x1*x2*x3"
SQUARES = "vars: x,y; x^2, y^2"
SHARED_X = "vars: x,y; x^2, x*y"
