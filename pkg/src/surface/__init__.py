"""Surface model: boundary points, arcs, Hom/Ext calculus"""
