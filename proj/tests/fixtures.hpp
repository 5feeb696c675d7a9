#pragma once

// Hand-built walk through R(0,0) twice (two theta-arcs), a (pi - theta)-arc,
// four straights and five single theta-arcs. Weight u1^5 u2 v^4 w1, length 12.
inline const char* kFigureWalk =
    "0,0,H;0,0,H>0,0,V,0,0,V>-1,1,H,-1,1,H>0,1,V,0,1,V>0,1,H,0,1,H>1,0,V,1,0,V>2,0,V,"
    "2,0,V>3,0,V,3,0,V>4,0,V,4,0,V>5,0,V,5,0,V>5,0,H,5,0,H>6,-1,V,6,-1,V>6,-1,H";
