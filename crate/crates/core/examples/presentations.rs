//! Parsing presentations and enumerating cosets.

use cayley_spectra::catalog::{element_from_word, element_words, parse_group_spec};
use cayley_spectra::presentation::{
    evaluate_word, parse_presentation, parse_word, verify_presentation,
};
use cayley_spectra::todd_coxeter::realize;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "a,b | a^4 = b^4 = 1, ab = ba^-1";
    let p = parse_presentation(text)?;
    println!("parsed: {}", p.render());

    let g = realize(text, Some(16))?;
    println!(
        "order {} with element orders {:?}",
        g.order(),
        g.element_order_histogram()
    );
    assert!(verify_presentation(&g, &p, g.generators()));

    // Words evaluate against the generators in presentation order.
    let w = parse_word("(ab)^2 b^-1", &p.generator_names)?;
    let x = evaluate_word(&g, g.generators(), &w);
    println!("(ab)^2 b^-1 = element {x}, order {}", g.element_order(x));

    // A shortest word per element, and back again.
    let words = element_words(&g);
    for (i, word) in words.iter().enumerate().take(6) {
        assert_eq!(element_from_word(&g, word)?, i);
        println!("  {i:>2}: {word}");
    }

    // The alternating group from a three-generator presentation.
    let a5 = realize("x,y | x^2 = y^3 = (xy)^5 = 1", Some(60))?;
    println!("<x,y | x^2, y^3, (xy)^5> has order {}", a5.order());
    assert_eq!(a5.order(), parse_group_spec("A5")?.order());
    Ok(())
}
