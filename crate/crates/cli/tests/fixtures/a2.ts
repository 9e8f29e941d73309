ts a2
initial s0
arc s0 a s1
arc s1 a s2
